// SPDX-License-Identifier: Apache-2.0
#include "swpm/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "swpm/progenitor.hpp"
#include "swpm/standardize.hpp"

namespace swpm {

namespace {

// Moments with magnitude at or below this are treated as exact zeros and
// the particles that would carry them are omitted.
constexpr double kZeroMoment = 1e-14;
// Weights this far below zero are rounding noise and are clamped to zero;
// anything lower means the speed parameter is infeasible.
constexpr double kWeightGrace = -1e-14;

double pruned(double x) { return std::abs(x) <= kZeroMoment ? 0.0 : x; }

int sign(double x) { return x >= 0.0 ? 1 : -1; }

MomentVector prune(const MomentVector& mu) {
  std::vector<double> values(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) values[i] = pruned(mu[i]);
  return {mu.order(), std::move(values)};
}

MomentVector zero_mixed(const MomentVector& mu) {
  std::vector<double> values(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const MomentKey& k = mu.keys()[i];
    const int axes = (k.kx > 0) + (k.ky > 0) + (k.kz > 0);
    values[i] = axes >= 2 ? 0.0 : mu[i];
  }
  return {mu.order(), std::move(values)};
}

Vec3 axis_vector(Axis axis, double value) {
  switch (axis) {
    case Axis::X:
      return {value, 0.0, 0.0};
    case Axis::Y:
      return {0.0, value, 0.0};
    default:
      return {0.0, 0.0, value};
  }
}

void push_weighted(std::vector<WeightedParticle>& out, const Vec3& v, double w) {
  if (w < kWeightGrace) {
    throw NegativeWeightError("weight " + std::to_string(w) +
                              " is negative; the speed parameter is below the feasible minimum");
  }
  if (w <= 0.0) return;
  out.push_back({v, w});
}

double total_weight(const std::vector<WeightedParticle>& parts) {
  double s = 0.0;
  for (const auto& p : parts) s += p.w;
  return s;
}

Ensemble assemble_k3(const MomentVector& mu_in, const SchemeConfig& config, double s,
                     bool with_mixed, CenterDiagnostics* diag) {
  if (!(s > 0.0)) throw std::invalid_argument("speed parameter must be positive");
  const MomentVector mu = prune(mu_in);

  std::vector<WeightedParticle> parts;
  parts.reserve(26);

  const auto beta = choose_beta(mu, config);
  const BacksubParams params = compute_backsub_params(mu, config, beta);

  for (const auto [axis, p, b, l] :
       {std::tuple{Axis::X, params.x, beta[0], config.l.x},
        std::tuple{Axis::Y, params.y, beta[1], config.l.y},
        std::tuple{Axis::Z, params.z, beta[2], config.l.z}}) {
    for (const auto& q : solve_axis_block(axis, p, b, l, s)) parts.push_back(q);
  }

  if (with_mixed) {
    const double s_twin = s / config.delta;
    for (const auto& q : solve_twins(PlanePair::XY,
                                     {mu.at({1, 1, 0}), mu.at({1, 2, 0}), mu.at({2, 1, 0})},
                                     s_twin))
      parts.push_back(q);
    for (const auto& q : solve_twins(PlanePair::XZ,
                                     {mu.at({1, 0, 1}), mu.at({1, 0, 2}), mu.at({2, 0, 1})},
                                     s_twin))
      parts.push_back(q);
    for (const auto& q : solve_twins(PlanePair::YZ,
                                     {mu.at({0, 1, 1}), mu.at({0, 1, 2}), mu.at({0, 2, 1})},
                                     s_twin))
      parts.push_back(q);
    for (const auto& q : solve_quadruplet(mu.at({1, 1, 1}), s / config.gamma)) parts.push_back(q);
  }

  // Center weight from the mass balance; the closed form is kept only as a
  // diagnostic because its constants do not recover the pure order-2 limit.
  const double w0 = mu.at({0, 0, 0}) - total_weight(parts);
  if (diag) {
    diag->w0 = w0;
    diag->w0_closed = (s * s * s - params.a0 * s + params.b0) / (2.0 * s * s * s);
  }
  if (w0 < kWeightGrace) {
    throw NegativeWeightError("center weight " + std::to_string(w0) +
                              " is negative; the speed parameter is below the feasible minimum");
  }

  std::vector<WeightedParticle> ordered;
  ordered.reserve(parts.size() + 1);
  if (w0 > 0.0) ordered.push_back({{0.0, 0.0, 0.0}, w0});
  ordered.insert(ordered.end(), parts.begin(), parts.end());
  return Ensemble(ordered);
}

}  // namespace

std::string to_string(SchemeVariant variant) {
  switch (variant) {
    case SchemeVariant::K1:
      return "k1";
    case SchemeVariant::K2:
      return "k2";
    case SchemeVariant::K2_5:
      return "k2.5";
    default:
      return "k3";
  }
}

SchemeVariant parse_scheme_variant(const std::string& name) {
  if (name == "k1") return SchemeVariant::K1;
  if (name == "k2") return SchemeVariant::K2;
  if (name == "k2.5") return SchemeVariant::K2_5;
  if (name == "k3") return SchemeVariant::K3;
  throw std::invalid_argument("unknown scheme '" + name + "' (expected k1|k2|k2.5|k3)");
}

int reduced_particle_budget(SchemeVariant variant) {
  switch (variant) {
    case SchemeVariant::K1:
      return 1;
    case SchemeVariant::K2:
      return 7;
    case SchemeVariant::K2_5:
      return 10;
    default:
      return 26;
  }
}

std::vector<MomentKey> preserved_keys(SchemeVariant variant) {
  switch (variant) {
    case SchemeVariant::K1:
      return canonical_keys(1);
    case SchemeVariant::K2:
      return canonical_keys(2);
    case SchemeVariant::K2_5: {
      auto keys = canonical_keys(2);
      keys.push_back({3, 0, 0});
      keys.push_back({0, 3, 0});
      keys.push_back({0, 0, 3});
      return keys;
    }
    default:
      return canonical_keys(3);
  }
}

std::vector<MomentKey> lab_preserved_keys(SchemeVariant variant) {
  return variant == SchemeVariant::K2_5 ? canonical_keys(2) : preserved_keys(variant);
}

std::array<int, 3> choose_beta(const MomentVector& mu, const SchemeConfig& config) {
  const double d2 = config.delta * config.delta;
  const double dx = pruned(mu.at({3, 0, 0})) +
                    (pruned(mu.at({1, 2, 0})) + pruned(mu.at({1, 0, 2}))) * (d2 - 1.0);
  const double dy = pruned(mu.at({0, 3, 0})) +
                    (pruned(mu.at({0, 1, 2})) + pruned(mu.at({2, 1, 0}))) * (d2 - 1.0);
  const double dz = pruned(mu.at({0, 0, 3})) +
                    (pruned(mu.at({0, 2, 1})) + pruned(mu.at({2, 0, 1}))) * (d2 - 1.0);
  return {sign(dx * (config.l.x * config.l.x - 1.0)),
          sign(dy * (config.l.y * config.l.y - 1.0)),
          sign(dz * (config.l.z * config.l.z - 1.0))};
}

BacksubParams compute_backsub_params(const MomentVector& mu, const SchemeConfig& config,
                                     const std::array<int, 3>& beta) {
  const double delta = config.delta, gamma = config.gamma;
  const double d2 = delta * delta;

  const double m110 = mu.at({1, 1, 0}), m101 = mu.at({1, 0, 1}), m011 = mu.at({0, 1, 1});
  const double m120 = mu.at({1, 2, 0}), m210 = mu.at({2, 1, 0});
  const double m102 = mu.at({1, 0, 2}), m201 = mu.at({2, 0, 1});
  const double m012 = mu.at({0, 1, 2}), m021 = mu.at({0, 2, 1});
  const double m111 = mu.at({1, 1, 1});
  const double m300 = mu.at({3, 0, 0}), m030 = mu.at({0, 3, 0}), m003 = mu.at({0, 0, 3});

  // b collects what the twins and the quadruplet put into the pure second
  // moment; c+/c- fall out of eliminating the third axis particle between
  // the odd-power rows. A dense-solve unit test pins all the signs.
  const auto axis_params = [&](double pure3, double odd_pair, double abs_pair, double a,
                               int bsign, double l) {
    AxisParams p;
    p.a = a;
    p.b = delta * abs_pair + gamma * std::abs(m111);
    p.c_plus = bsign * ((odd_pair) * (d2 * l - 1.0) + pure3) / (l - 1.0);
    p.c_minus = bsign * (pure3 - (odd_pair) * (d2 * l + 1.0)) / (l + 1.0);
    p.d = pure3 + odd_pair * (d2 - 1.0);
    return p;
  };

  BacksubParams out;
  out.x = axis_params(m300, m120 + m102,
                      std::abs(m210) + std::abs(m120) + std::abs(m201) + std::abs(m102),
                      1.0 - std::abs(m110) - std::abs(m101), beta[0], config.l.x);
  out.y = axis_params(m030, m210 + m012,
                      std::abs(m012) + std::abs(m021) + std::abs(m120) + std::abs(m210),
                      1.0 - std::abs(m110) - std::abs(m011), beta[1], config.l.y);
  out.z = axis_params(m003, m201 + m021,
                      std::abs(m012) + std::abs(m021) + std::abs(m102) + std::abs(m201),
                      1.0 - std::abs(m011) - std::abs(m101), beta[2], config.l.z);

  out.a0 = -3.0 + (2.0 - d2) * (std::abs(m011) + std::abs(m101) + std::abs(m110));
  out.b0 = beta[0] / config.l.x * m300 + beta[1] / config.l.y * m030 +
           beta[2] / config.l.z * m003 + gamma * (3.0 - gamma * gamma * gamma) * std::abs(m111) +
           (d2 - 1.0) * (beta[0] / config.l.x * (m102 + m120) +
                         beta[1] / config.l.y * (m012 + m210) +
                         beta[2] / config.l.z * (m021 + m201)) +
           delta * (2.0 - d2) * (std::abs(m012) + std::abs(m021) + std::abs(m102) +
                                 std::abs(m120) + std::abs(m201) + std::abs(m210));
  return out;
}

Ensemble solve_k1(const MomentVector& mu) {
  const double mass = mu.at({0, 0, 0});
  if (!(mass > 0.0)) throw std::invalid_argument("total weight must be positive");

  const std::array<double, 3> firsts = {pruned(mu.at({1, 0, 0})), pruned(mu.at({0, 1, 0})),
                                        pruned(mu.at({0, 0, 1}))};
  int m = 0;
  for (double f : firsts) m += (f != 0.0);

  std::vector<WeightedParticle> parts;
  if (m == 0) {
    parts.push_back({{0.0, 0.0, 0.0}, mass});
    return Ensemble(parts);
  }

  // One particle per nonzero drift component, placed so its weight is
  // mass/(2m); the sign of the velocity matches the sign of the moment.
  const double w_axis = mass / (2.0 * m);
  double used = 0.0;
  std::vector<WeightedParticle> axis_parts;
  for (int i = 0; i < 3; ++i) {
    if (firsts[i] == 0.0) continue;
    axis_parts.push_back({axis_vector(static_cast<Axis>(i), firsts[i] / w_axis), w_axis});
    used += w_axis;
  }
  parts.push_back({{0.0, 0.0, 0.0}, mass - used});
  parts.insert(parts.end(), axis_parts.begin(), axis_parts.end());
  return Ensemble(parts);
}

Ensemble solve_k2(const MomentVector& mu, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("speed parameter must be positive");
  const double mass = mu.at({0, 0, 0});
  const double w_axis = 1.0 / (2.0 * s * s);
  const double w0 = mass - 6.0 * w_axis;
  if (w0 < kWeightGrace) {
    throw SpeedTooSmallError("speed " + std::to_string(s) + " is below sqrt(3)");
  }

  std::vector<WeightedParticle> parts;
  parts.reserve(7);
  if (w0 > 0.0) parts.push_back({{0.0, 0.0, 0.0}, w0});
  for (int axis = 0; axis < 3; ++axis) {
    parts.push_back({axis_vector(static_cast<Axis>(axis), s), w_axis});
    parts.push_back({axis_vector(static_cast<Axis>(axis), -s), w_axis});
  }
  return Ensemble(parts);
}

Ensemble solve_quadruplet(double m111, double s_quad) {
  if (!(s_quad > 0.0)) throw std::invalid_argument("quadruplet speed must be positive");
  std::vector<WeightedParticle> parts;
  if (pruned(m111) == 0.0) return Ensemble(parts);

  const double alpha = sign(m111);
  const double w = std::abs(m111) / (4.0 * s_quad * s_quad * s_quad);
  parts.push_back({s_quad * Vec3{alpha, 1.0, 1.0}, w});
  parts.push_back({s_quad * Vec3{-alpha, -1.0, 1.0}, w});
  parts.push_back({s_quad * Vec3{-alpha, 1.0, -1.0}, w});
  parts.push_back({s_quad * Vec3{alpha, -1.0, -1.0}, w});
  return Ensemble(parts);
}

Ensemble solve_twins(PlanePair plane, const std::array<double, 3>& moments, double s_twin) {
  if (!(s_twin > 0.0)) throw std::invalid_argument("twin speed must be positive");
  const int p = plane == PlanePair::YZ ? 1 : 0;
  const int q = plane == PlanePair::XY ? 1 : 2;
  const double s2 = s_twin * s_twin;
  const double s3 = s2 * s_twin;

  std::vector<WeightedParticle> parts;
  const auto twin = [&](double vp, double vq, double w) {
    Vec3 v;
    v[p] = vp * s_twin;
    v[q] = vq * s_twin;
    parts.push_back({v, w});
  };

  // Pair 1 reproduces the (1,1) moment, pairs 2 and 3 the (1,2) and (2,1)
  // moments; each pair sits in the quadrants compatible with its sign.
  if (const double m = pruned(moments[0]); m != 0.0) {
    const double a = sign(m), w = std::abs(m) / (2.0 * s2);
    twin(a, 1.0, w);
    twin(-a, -1.0, w);
  }
  if (const double m = pruned(moments[1]); m != 0.0) {
    const double a = sign(m), w = std::abs(m) / (2.0 * s3);
    twin(a, 1.0, w);
    twin(a, -1.0, w);
  }
  if (const double m = pruned(moments[2]); m != 0.0) {
    const double a = sign(m), w = std::abs(m) / (2.0 * s3);
    twin(1.0, a, w);
    twin(-1.0, a, w);
  }
  return Ensemble(parts);
}

Ensemble solve_axis_block(Axis axis, const AxisParams& params, int beta, double l, double s) {
  if (!(l > 0.0) || l == 1.0) throw std::invalid_argument("axis ratio l must be positive and != 1");
  if (!(s > 0.0)) throw std::invalid_argument("speed parameter must be positive");

  const double s3 = s * s * s;
  std::vector<WeightedParticle> parts;
  push_weighted(parts, axis_vector(axis, beta * s), (params.a * s - params.b - params.c_plus) / (2.0 * s3));
  push_weighted(parts, axis_vector(axis, -beta * s), (params.a * s - params.b - params.c_minus) / (2.0 * s3));
  push_weighted(parts, axis_vector(axis, beta * l * s), beta * params.d / ((l * l - 1.0) * l * s3));
  return Ensemble(parts);
}

Ensemble solve_k3(const MomentVector& mu, const SchemeConfig& config, double s,
                  CenterDiagnostics* diag) {
  return assemble_k3(mu, config, s, /*with_mixed=*/true, diag);
}

Ensemble solve_k2_5(const MomentVector& mu, const SchemeConfig& config, double s,
                    CenterDiagnostics* diag) {
  return assemble_k3(zero_mixed(mu), config, s, /*with_mixed=*/false, diag);
}

namespace {

Ensemble solve_variant(const MomentVector& mu, const SchemeConfig& config, double s) {
  switch (config.variant) {
    case SchemeVariant::K1:
      return solve_k1(mu);
    case SchemeVariant::K2:
      return solve_k2(mu, s);
    case SchemeVariant::K2_5:
      return solve_k2_5(mu, config, s);
    default:
      return solve_k3(mu, config, s);
  }
}

}  // namespace

double select_min_speed(const MomentVector& mu, const SchemeConfig& config) {
  if (config.variant == SchemeVariant::K1) return 0.0;

  double lb = std::numbers::sqrt3;
  if (config.variant != SchemeVariant::K2) {
    const MomentVector mu_eff =
        config.variant == SchemeVariant::K2_5 ? prune(zero_mixed(mu)) : prune(mu);
    const auto beta = choose_beta(mu_eff, config);
    const BacksubParams params = compute_backsub_params(mu_eff, config, beta);
    for (const AxisParams* p : {&params.x, &params.y, &params.z}) {
      if (p->a > 0.0) {
        lb = std::max(lb, (p->b + p->c_plus) / p->a);
        lb = std::max(lb, (p->b + p->c_minus) / p->a);
      }
    }
  }

  const auto feasible = [&](double s) {
    try {
      solve_variant(mu, config, s);
      return true;
    } catch (const NegativeWeightError&) {
      return false;
    } catch (const SpeedTooSmallError&) {
      return false;
    }
  };

  if (feasible(lb)) return lb;

  double lo = lb, hi = lb;
  do {
    lo = hi;
    hi *= 1.1;
    if (hi > 1e6) {
      throw NoFeasibleSpeedError("no feasible speed below 1e6; moments are pathological");
    }
  } while (!feasible(hi));

  const double tol = config.speed.kind == SpeedPolicy::Kind::Minimal ? config.speed.value : 1e-6;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

ReduceResult reduce(const Ensemble& ensemble, const SchemeConfig& config) {
  ReduceResult res;
  res.report.input_count = ensemble.size();

  const auto pass_through = [&](const std::string& note) {
    res.ensemble = ensemble;
    res.report.output_count = ensemble.size();
    res.report.pass_through = true;
    res.report.note = note;
    return res;
  };

  if (ensemble.size() <= static_cast<std::size_t>(reduced_particle_budget(config.variant))) {
    return pass_through("group no larger than the reduced size");
  }

  Ensemble standardized;
  StandardizationTransform transform;
  try {
    std::tie(standardized, transform) = standardize(ensemble);
  } catch (const DegenerateCovarianceError& e) {
    return pass_through(e.what());
  }

  const int order = config.variant == SchemeVariant::K1 ? 1
                    : config.variant == SchemeVariant::K2 ? 2
                                                          : 3;
  const MomentVector mu = moment_vector(standardized, order);

  Ensemble reduced_std;
  double s = 0.0;
  try {
    if (config.variant != SchemeVariant::K1) {
      s = config.speed.kind == SpeedPolicy::Kind::Minimal ? select_min_speed(mu, config)
                                                          : config.speed.value;
    }
    reduced_std = solve_variant(mu, config, s);
  } catch (const NoFeasibleSpeedError& e) {
    return pass_through(e.what());
  } catch (const SpeedTooSmallError& e) {
    return pass_through(e.what());
  } catch (const NegativeWeightError& e) {
    return pass_through(e.what());
  }

  res.ensemble = destandardize(reduced_std, transform);
  res.report.output_count = res.ensemble.size();
  res.report.s = s;
  res.report.max_discrepancy =
      verify_keys(ensemble, res.ensemble, lab_preserved_keys(config.variant)).max_discrepancy();
  return res;
}

}  // namespace swpm
