// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "swpm/distributions.hpp"
#include "swpm/progenitor.hpp"
#include "swpm/schemes.hpp"
#include "swpm/standardize.hpp"
#include "test_util.hpp"

using namespace swpm;

namespace {

// Standardized moment vector with configurable third-order entries; second
// moments identity, first moments zero, unit mass.
MomentVector make_standardized_mu(double m300, double m030, double m003, double m120,
                                  double m210, double m102, double m201, double m012,
                                  double m021, double m111) {
  std::vector<double> v(20, 0.0);
  const auto keys = canonical_keys(3);
  const auto set = [&](MomentKey key, double value) {
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (keys[i] == key) v[i] = value;
  };
  set({0, 0, 0}, 1.0);
  set({2, 0, 0}, 1.0);
  set({0, 2, 0}, 1.0);
  set({0, 0, 2}, 1.0);
  set({3, 0, 0}, m300);
  set({0, 3, 0}, m030);
  set({0, 0, 3}, m003);
  set({1, 2, 0}, m120);
  set({2, 1, 0}, m210);
  set({1, 0, 2}, m102);
  set({2, 0, 1}, m201);
  set({0, 1, 2}, m012);
  set({0, 2, 1}, m021);
  set({1, 1, 1}, m111);
  return {3, std::move(v)};
}

MomentVector random_standardized_mu(std::mt19937_64& rng, double third = 0.3, double mixed = 0.1) {
  const auto u = [&](double scale) { return scale * (2.0 * uniform01(rng) - 1.0); };
  return make_standardized_mu(u(third), u(third), u(third), u(mixed), u(mixed), u(mixed),
                              u(mixed), u(mixed), u(mixed), u(mixed));
}

MomentVector standardized_sample_mu(std::size_t n, std::uint64_t seed) {
  DistParams params;
  params.alpha = {0.75, 0.0, 0.0};
  params.beta = {0.02, 0.0, 0.0};
  const Ensemble sample = sample_swpm_like(params, n, seed);
  const auto [std_e, t] = standardize(sample);
  return moment_vector(std_e, 3);
}

double total_weight(const Ensemble& e) { return moment(e, {0, 0, 0}); }

bool feasible_k3(const MomentVector& mu, const SchemeConfig& cfg, double s) {
  try {
    solve_k3(mu, cfg, s);
    return true;
  } catch (const NegativeWeightError&) {
    return false;
  }
}

}  // namespace

TEST_SUITE("schemes") {

TEST_CASE("drift-only reduction of a standardized group is a single particle") {
  const MomentVector mu(1, {1.0, 0.0, 0.0, 0.0});
  const Ensemble out = solve_k1(mu);
  REQUIRE(out.size() == 1);
  CHECK(out.particles()[0].v.norm2() == 0.0);
  CHECK(out.particles()[0].w == 1.0);
}

TEST_CASE("drift-only reduction places sign-matched particles") {
  const MomentVector mu(1, {1.0, 0.2, 0.0, 0.0});
  const Ensemble out = solve_k1(mu);
  REQUIRE(out.size() == 2);
  CHECK(out.particles()[0].v.norm2() == 0.0);  // center carries the leftover mass
  CHECK(out.particles()[1].v.x > 0.0);
  CHECK(moment(out, {0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(moment(out, {1, 0, 0}) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(moment(out, {0, 1, 0}) == 0.0);
}

TEST_CASE("drift-only reduction preserves mass and drift for general moments") {
  const MomentVector mu(1, {2.5, -0.4, 0.3, 0.0});
  const Ensemble out = solve_k1(mu);
  REQUIRE(out.size() == 3);
  CHECK(moment(out, {0, 0, 0}) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(moment(out, {1, 0, 0}) == doctest::Approx(-0.4).epsilon(1e-15));
  CHECK(moment(out, {0, 1, 0}) == doctest::Approx(0.3).epsilon(1e-15));
  for (const auto& p : out) CHECK(p.w > 0.0);
}

TEST_CASE("order-2 solution at the minimal speed drops the center") {
  const MomentVector mu = make_standardized_mu(0, 0, 0, 0, 0, 0, 0, 0, 0, 0);
  const Ensemble out = solve_k2(mu, std::numbers::sqrt3);
  REQUIRE(out.size() == 6);
  for (const auto& p : out) {
    CHECK(p.w == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(p.v.norm() == doctest::Approx(std::numbers::sqrt3).epsilon(1e-15));
  }
}

TEST_CASE("order-2 solution at s = 2") {
  const MomentVector mu = make_standardized_mu(0, 0, 0, 0, 0, 0, 0, 0, 0, 0);
  const Ensemble out = solve_k2(mu, 2.0);
  REQUIRE(out.size() == 7);
  CHECK(out.particles()[0].w == doctest::Approx(0.25).epsilon(1e-15));
  for (std::size_t i = 1; i < 7; ++i) {
    CHECK(out.particles()[i].w == doctest::Approx(0.125).epsilon(1e-15));
  }
  const VerifyReport report = verify_keys(out, out, canonical_keys(2));
  CHECK(report.max_discrepancy() == 0.0);
}

TEST_CASE("order-2 solution rejects speeds below sqrt(3)") {
  const MomentVector mu = make_standardized_mu(0, 0, 0, 0, 0, 0, 0, 0, 0, 0);
  CHECK_THROWS_AS(solve_k2(mu, 1.6), SpeedTooSmallError);
}

TEST_CASE("quadruplet reproduces the fully mixed moment and nothing else odd") {
  const Ensemble empty = solve_quadruplet(0.0, std::numbers::sqrt3);
  CHECK(empty.empty());

  const double s_quad = std::numbers::sqrt3;
  const Ensemble quad = solve_quadruplet(0.04, s_quad);
  REQUIRE(quad.size() == 4);
  const double expected_w = 0.04 / (4.0 * std::pow(3.0, 1.5));
  for (const auto& p : quad) {
    CHECK(p.w == doctest::Approx(expected_w).epsilon(1e-14));
    CHECK(p.w == doctest::Approx(1.9245008972987527e-3).epsilon(1e-12));
  }
  CHECK(moment(quad, {1, 1, 1}) == doctest::Approx(0.04).epsilon(1e-14));
  for (const MomentKey key : {MomentKey{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1},
                              {0, 1, 1}, {3, 0, 0}, {1, 2, 0}, {2, 1, 0}, {1, 0, 2}}) {
    CHECK(std::abs(moment(quad, key)) < 1e-16);
  }
}

TEST_CASE("negative fully mixed moment flips every quadruplet octant") {
  const Ensemble quad = solve_quadruplet(-0.03, 1.5);
  REQUIRE(quad.size() == 4);
  for (const auto& p : quad) CHECK(p.v.x * p.v.y * p.v.z < 0.0);
  CHECK(moment(quad, {1, 1, 1}) == doctest::Approx(-0.03).epsilon(1e-14));
}

TEST_CASE("twin pairs hit their single target moment") {
  CHECK(solve_twins(PlanePair::XY, {0.0, 0.0, 0.0}, 2.0).empty());

  const Ensemble twins = solve_twins(PlanePair::XY, {0.0, -0.02, 0.0}, 2.0);
  REQUIRE(twins.size() == 2);
  for (const auto& p : twins) {
    CHECK(p.w == doctest::Approx(0.00125).epsilon(1e-15));
    CHECK(p.v.x == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(p.v.z == 0.0);
  }
  CHECK(moment(twins, {1, 2, 0}) == doctest::Approx(-0.02).epsilon(1e-14));
  CHECK(std::abs(moment(twins, {1, 1, 0})) < 1e-18);
  CHECK(std::abs(moment(twins, {2, 1, 0})) < 1e-18);
}

TEST_CASE("each twin pair cancels in the other mixed moments of its plane") {
  const double s = 1.7;
  for (const auto plane : {PlanePair::XY, PlanePair::XZ, PlanePair::YZ}) {
    for (int which = 0; which < 3; ++which) {
      std::array<double, 3> moments = {0.0, 0.0, 0.0};
      moments[which] = which == 0 ? -0.05 : 0.07;
      const Ensemble twins = solve_twins(plane, moments, s);
      REQUIRE(twins.size() == 2);

      const std::array<std::array<MomentKey, 3>, 3> plane_keys = {{
          {MomentKey{1, 1, 0}, {1, 2, 0}, {2, 1, 0}},
          {MomentKey{1, 0, 1}, {1, 0, 2}, {2, 0, 1}},
          {MomentKey{0, 1, 1}, {0, 1, 2}, {0, 2, 1}},
      }};
      const int pi = plane == PlanePair::XY ? 0 : (plane == PlanePair::XZ ? 1 : 2);
      for (int k = 0; k < 3; ++k) {
        const double got = moment(twins, plane_keys[pi][k]);
        if (k == which) {
          CHECK(got == doctest::Approx(moments[which]).epsilon(1e-14));
        } else {
          CHECK(std::abs(got) < 1e-18);
        }
      }
    }
  }
}

TEST_CASE("back-substitution parameters collapse for a pure Gaussian") {
  const MomentVector mu = make_standardized_mu(0, 0, 0, 0, 0, 0, 0, 0, 0, 0);
  SchemeConfig cfg;
  cfg.variant = SchemeVariant::K3;
  const auto beta = choose_beta(mu, cfg);
  const BacksubParams p = compute_backsub_params(mu, cfg, beta);
  for (const AxisParams* ap : {&p.x, &p.y, &p.z}) {
    CHECK(ap->a == 1.0);
    CHECK(ap->b == 0.0);
    CHECK(ap->c_plus == 0.0);
    CHECK(ap->c_minus == 0.0);
    CHECK(ap->d == 0.0);
  }
  CHECK(p.a0 == -3.0);
  CHECK(p.b0 == 0.0);
}

TEST_CASE("standardized moments give unit leading coefficient") {
  std::mt19937_64 rng(5);
  const MomentVector mu = random_standardized_mu(rng);
  SchemeConfig cfg;
  cfg.variant = SchemeVariant::K3;
  const BacksubParams p = compute_backsub_params(mu, cfg, choose_beta(mu, cfg));
  CHECK(p.x.a == 1.0);
  CHECK(p.y.a == 1.0);
  CHECK(p.z.a == 1.0);
}

TEST_CASE("axis-block weights agree with a dense solve of the modified system") {
  // Independent evaluator: subtract the twin and quadruplet contributions by
  // direct summation, solve the three-particle axis system with the dense
  // solver, and compare weights and the extracted c+/c- parameters.
  std::mt19937_64 rng(12345);
  SchemeConfig cfg;
  cfg.variant = SchemeVariant::K3;
  const double s = 2.6;

  for (int trial = 0; trial < 40; ++trial) {
    const MomentVector mu = random_standardized_mu(rng);
    const auto beta = choose_beta(mu, cfg);
    const BacksubParams params = compute_backsub_params(mu, cfg, beta);

    Ensemble side;  // twins + quadruplet
    const double s_twin = s / cfg.delta;
    side.append(solve_twins(PlanePair::XY,
                            {mu.at({1, 1, 0}), mu.at({1, 2, 0}), mu.at({2, 1, 0})}, s_twin));
    side.append(solve_twins(PlanePair::XZ,
                            {mu.at({1, 0, 1}), mu.at({1, 0, 2}), mu.at({2, 0, 1})}, s_twin));
    side.append(solve_twins(PlanePair::YZ,
                            {mu.at({0, 1, 1}), mu.at({0, 1, 2}), mu.at({0, 2, 1})}, s_twin));
    side.append(solve_quadruplet(mu.at({1, 1, 1}), s / cfg.gamma));

    const std::vector<double> mu_mod = {
        mu.at({1, 0, 0}) - moment(side, {1, 0, 0}),
        mu.at({2, 0, 0}) - moment(side, {2, 0, 0}),
        mu.at({3, 0, 0}) - moment(side, {3, 0, 0}),
    };

    const double b = beta[0];
    const std::vector<Vec3> velocities = {
        {b * s, 0, 0}, {-b * s, 0, 0}, {b * cfg.l.x * s, 0, 0}};
    const ProgenitorSystem sys =
        build_progenitor({{1, 0, 0}, {2, 0, 0}, {3, 0, 0}}, velocities);
    const auto w_dense = solve_square(sys, mu_mod);

    const Ensemble block = solve_axis_block(Axis::X, params.x, beta[0], cfg.l.x, s);
    REQUIRE(block.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(block.particles()[i].w ==
            doctest::Approx(w_dense[i]).epsilon(1e-11));
    }

    // c as the second evaluator sees it, from the dense weights.
    const double s3 = s * s * s;
    const double c_plus_dense = params.x.a * s - params.x.b - 2.0 * s3 * w_dense[0];
    const double c_minus_dense = params.x.a * s - params.x.b - 2.0 * s3 * w_dense[1];
    CHECK(params.x.c_plus == doctest::Approx(c_plus_dense).epsilon(1e-10));
    CHECK(params.x.c_minus == doctest::Approx(c_minus_dense).epsilon(1e-10));
  }
}

TEST_CASE("axis block degenerates to the two-particle pair for a Gaussian") {
  AxisParams p;  // a = 1, everything else 0
  const Ensemble block = solve_axis_block(Axis::X, p, 1, 0.5, 2.0);
  REQUIRE(block.size() == 2);
  CHECK(block.particles()[0].v.x == doctest::Approx(2.0));
  CHECK(block.particles()[1].v.x == doctest::Approx(-2.0));
  for (const auto& q : block.particles()) {
    CHECK(q.w == doctest::Approx(1.0 / 8.0).epsilon(1e-15));
  }
}

TEST_CASE("beta follows the sign of the third-particle weight") {
  const MomentVector mu = make_standardized_mu(0.3, 0, 0, 0, 0, 0, 0, 0, 0, 0);
  SchemeConfig cfg;
  cfg.variant = SchemeVariant::K3;
  const auto beta = choose_beta(mu, cfg);
  CHECK(beta[0] == -1);  // positive skew, l < 1 makes the denominator negative
  const BacksubParams params = compute_backsub_params(mu, cfg, beta);
  const Ensemble block = solve_axis_block(Axis::X, params.x, beta[0], cfg.l.x, 3.0);
  for (const auto& p : block) CHECK(p.w >= 0.0);
}

TEST_CASE("full order-3 solution reproduces constructed moments") {
  std::mt19937_64 rng(777);
  SchemeConfig cfg;
  cfg.variant = SchemeVariant::K3;
  for (int trial = 0; trial < 30; ++trial) {
    const MomentVector mu = random_standardized_mu(rng);
    const double s = select_min_speed(mu, cfg) * 1.02;
    const Ensemble out = solve_k3(mu, cfg, s);
    CHECK(out.size() <= 26);
    for (const auto& p : out) CHECK(p.w >= 0.0);

    const auto keys = canonical_keys(3);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      CHECK(moment(out, keys[i]) == doctest::Approx(mu[i]).epsilon(1e-11).scale(1.0));
    }
  }
}

TEST_CASE("order-3 solution on a pure Gaussian equals the order-2 one") {
  const MomentVector mu = make_standardized_mu(0, 0, 0, 0, 0, 0, 0, 0, 0, 0);
  SchemeConfig cfg;
  cfg.variant = SchemeVariant::K3;
  const double s = 2.0;
  const Ensemble k3 = solve_k3(mu, cfg, s);
  const Ensemble k2 = solve_k2(mu, s);
  REQUIRE(k3.size() == k2.size());
  for (std::size_t i = 0; i < k3.size(); ++i) {
    CHECK(k3.particles()[i].v.x == doctest::Approx(k2.particles()[i].v.x).epsilon(1e-15));
    CHECK(k3.particles()[i].v.y == doctest::Approx(k2.particles()[i].v.y).epsilon(1e-15));
    CHECK(k3.particles()[i].v.z == doctest::Approx(k2.particles()[i].v.z).epsilon(1e-15));
    CHECK(k3.particles()[i].w == doctest::Approx(k2.particles()[i].w).epsilon(1e-13));
  }
}

TEST_CASE("near-zero third moments degenerate to the order-2 particle set") {
  const MomentVector mu = make_standardized_mu(5e-15, -3e-15, 0, 2e-15, 0, -9e-15, 0, 4e-15,
                                               0, -5e-15);
  SchemeConfig cfg;
  const double s = 2.0;
  cfg.variant = SchemeVariant::K3;
  const Ensemble k3 = solve_k3(mu, cfg, s);
  cfg.variant = SchemeVariant::K2_5;
  const Ensemble k25 = solve_k2_5(mu, cfg, s);
  const Ensemble k2 = solve_k2(mu, s);
  REQUIRE(k3.size() == k2.size());
  REQUIRE(k25.size() == k2.size());
  for (std::size_t i = 0; i < k2.size(); ++i) {
    CHECK(k3.particles()[i].w == doctest::Approx(k2.particles()[i].w).epsilon(1e-13));
    CHECK(k25.particles()[i].w == doctest::Approx(k2.particles()[i].w).epsilon(1e-13));
  }
}

TEST_CASE("pure-third-moment variant preserves its declared set only") {
  const MomentVector mu = make_standardized_mu(0.3, 0, 0, 0, 0, 0, 0, 0, 0, 0);
  SchemeConfig cfg;
  cfg.variant = SchemeVariant::K2_5;
  const double s = select_min_speed(mu, cfg) * 1.02;
  const Ensemble out = solve_k2_5(mu, cfg, s);

  // x block has the extra particle, y and z stay pairs.
  int on_x = 0, on_y = 0, on_z = 0, center = 0;
  for (const auto& p : out) {
    if (p.v.norm2() == 0.0) ++center;
    else if (p.v.y == 0.0 && p.v.z == 0.0) ++on_x;
    else if (p.v.x == 0.0 && p.v.z == 0.0) ++on_y;
    else ++on_z;
  }
  CHECK(center == 1);
  CHECK(on_x == 3);
  CHECK(on_y == 2);
  CHECK(on_z == 2);
  CHECK(moment(out, {3, 0, 0}) == doctest::Approx(0.3).epsilon(1e-12));

  // A nonzero mixed input moment is not preserved by this variant.
  const MomentVector mixed = make_standardized_mu(0, 0, 0, 0.1, 0, 0, 0, 0, 0, 0);
  const double s2 = select_min_speed(mixed, cfg) * 1.02;
  const Ensemble out2 = solve_k2_5(mixed, cfg, s2);
  CHECK(std::abs(moment(out2, {1, 2, 0}) - 0.1) > 0.05);
}

TEST_CASE("minimal speed for Gaussian groups is sqrt(3)") {
  const MomentVector mu = make_standardized_mu(0, 0, 0, 0, 0, 0, 0, 0, 0, 0);
  SchemeConfig cfg;
  cfg.variant = SchemeVariant::K2;
  CHECK(select_min_speed(mu, cfg) == doctest::Approx(std::numbers::sqrt3).epsilon(1e-12));
  cfg.variant = SchemeVariant::K3;
  CHECK(select_min_speed(mu, cfg) == doctest::Approx(std::numbers::sqrt3).epsilon(1e-12));
  cfg.variant = SchemeVariant::K1;
  CHECK(select_min_speed(mu, cfg) == 0.0);
}

TEST_CASE("minimal speed brackets the feasibility boundary") {
  SchemeConfig cfg;
  cfg.variant = SchemeVariant::K3;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const MomentVector mu = standardized_sample_mu(80, seed);
    const double s_star = select_min_speed(mu, cfg);
    CHECK(feasible_k3(mu, cfg, s_star));
    if (s_star > std::numbers::sqrt3 + 1e-4) {
      CHECK_FALSE(feasible_k3(mu, cfg, s_star * (1.0 - 1e-4)));
    }
  }
}

TEST_CASE("infeasible moments raise instead of looping forever") {
  // A leading coefficient forced nonpositive cannot be fixed by any speed.
  auto values = make_standardized_mu(0, 0, 0, 0, 0, 0, 0, 0, 0, 0).values();
  const auto keys = canonical_keys(3);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (keys[i] == MomentKey{1, 1, 0}) values[i] = 0.7;
    if (keys[i] == MomentKey{1, 0, 1}) values[i] = 0.7;  // a_x = 1 - 1.4 < 0
    if (keys[i] == MomentKey{3, 0, 0}) values[i] = 0.5;
  }
  const MomentVector mu(3, values);
  SchemeConfig cfg;
  cfg.variant = SchemeVariant::K3;
  CHECK_THROWS_AS(select_min_speed(mu, cfg), NoFeasibleSpeedError);
}

TEST_CASE("reduce passes tiny ensembles through") {
  Ensemble tiny;
  tiny.push_back({{1.0, 0.0, 0.0}, 0.5});
  tiny.push_back({{-1.0, 0.5, 0.0}, 0.5});
  SchemeConfig cfg;
  cfg.variant = SchemeVariant::K3;
  const ReduceResult res = reduce(tiny, cfg);
  CHECK(res.report.pass_through);
  CHECK(res.ensemble.size() == tiny.size());
  CHECK(res.report.note.find("no larger") != std::string::npos);
}

TEST_CASE("reduce passes degenerate groups through") {
  Ensemble flat;
  for (int i = 0; i < 10; ++i) flat.push_back({{0.1 * i, 0.2 * i, 0.0}, 1.0});
  SchemeConfig cfg;
  cfg.variant = SchemeVariant::K2;
  const ReduceResult res = reduce(flat, cfg);
  CHECK(res.report.pass_through);
  CHECK(res.ensemble.size() == flat.size());
}

TEST_CASE("reduce preserves the declared moment set of each variant") {
  DistParams params;
  params.alpha = {0.75, 0.0, 0.0};
  params.beta = {0.02, 0.0, 0.0};
  const Ensemble sample = sample_swpm_like(params, 1000, 4242);

  for (const auto variant :
       {SchemeVariant::K1, SchemeVariant::K2, SchemeVariant::K2_5, SchemeVariant::K3}) {
    SchemeConfig cfg;
    cfg.variant = variant;
    const ReduceResult res = reduce(sample, cfg);
    REQUIRE_FALSE(res.report.pass_through);
    CHECK(res.ensemble.size() <= static_cast<std::size_t>(reduced_particle_budget(variant)));
    const VerifyReport report = verify_keys(sample, res.ensemble, lab_preserved_keys(variant));
    CHECK(report.max_rel_nonzero() < 1e-9);
    CHECK(report.max_abs_zero() < 1e-11);
    CHECK(res.report.max_discrepancy < 1e-9);
    CHECK(total_weight(res.ensemble) ==
          doctest::Approx(total_weight(sample)).epsilon(1e-12));
  }

  // The pure-third match of K2_5 lives in the whitened frame: reducing an
  // already standardized ensemble keeps those moments too.
  const auto [std_e, t] = standardize(sample);
  SchemeConfig cfg25;
  cfg25.variant = SchemeVariant::K2_5;
  const ReduceResult res25 = reduce(std_e, cfg25);
  REQUIRE_FALSE(res25.report.pass_through);
  const VerifyReport rep25 =
      verify_keys(std_e, res25.ensemble, preserved_keys(SchemeVariant::K2_5));
  CHECK(rep25.max_rel_nonzero() < 1e-9);
  CHECK(rep25.max_abs_zero() < 1e-11);
}

TEST_CASE("reduce with a fixed speed emits the full particle budget") {
  DistParams params;
  params.alpha = {0.75, 0.0, 0.0};
  params.beta = {0.02, 0.0, 0.0};
  const Ensemble sample = sample_swpm_like(params, 1000, 999);
  SchemeConfig cfg;
  cfg.variant = SchemeVariant::K2;
  cfg.speed = SpeedPolicy::fixed(2.0);
  const ReduceResult res = reduce(sample, cfg);
  CHECK(res.ensemble.size() == 7);
  CHECK(res.report.s == 2.0);
}

TEST_CASE("reduce treats an infeasible fixed speed as pass-through") {
  DistParams params;
  const Ensemble sample = sample_swpm_like(params, 500, 31);
  SchemeConfig cfg;
  cfg.variant = SchemeVariant::K2;
  cfg.speed = SpeedPolicy::fixed(1.0);
  const ReduceResult res = reduce(sample, cfg);
  CHECK(res.report.pass_through);
  CHECK_FALSE(res.report.note.empty());
  CHECK(res.ensemble.size() == sample.size());
}

TEST_CASE("variant names round trip") {
  for (const auto v :
       {SchemeVariant::K1, SchemeVariant::K2, SchemeVariant::K2_5, SchemeVariant::K3}) {
    CHECK(parse_scheme_variant(to_string(v)) == v);
  }
  CHECK_THROWS_AS(parse_scheme_variant("k9"), std::invalid_argument);
}

}  // TEST_SUITE
