// SPDX-License-Identifier: Apache-2.0
#include "swpm/distributions.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "swpm/rng.hpp"

namespace swpm {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;
constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

struct CdfTable {
  double lo = 0.0;
  double step = 0.0;
  std::vector<double> cdf;  // cdf[i] at lo + i*step, normalized to cdf.back() == 1

  double invert(double u) const {
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t i = it == cdf.begin() ? 0 : static_cast<std::size_t>(it - cdf.begin()) - 1;
    i = std::min(i, cdf.size() - 2);
    const double span = cdf[i + 1] - cdf[i];
    const double frac = span > 0.0 ? (u - cdf[i]) / span : 0.0;
    return lo + step * (static_cast<double>(i) + std::clamp(frac, 0.0, 1.0));
  }
};

// Cumulative of the truncated 1-D density on [-v_r, v_r], per-interval
// Simpson on 4096 nodes, linearly interpolated on inversion.
CdfTable make_cdf_table(double alpha, double beta, double v_r) {
  constexpr int kNodes = 4096;
  CdfTable t;
  t.lo = -v_r;
  t.step = 2.0 * v_r / (kNodes - 1);
  t.cdf.resize(kNodes);
  t.cdf[0] = 0.0;
  double prev = pdf1d(t.lo, alpha, beta);
  for (int i = 1; i < kNodes; ++i) {
    const double x = t.lo + t.step * i;
    const double mid = pdf1d(x - 0.5 * t.step, alpha, beta);
    const double cur = pdf1d(x, alpha, beta);
    t.cdf[i] = t.cdf[i - 1] + t.step / 6.0 * (prev + 4.0 * mid + cur);
    prev = cur;
  }
  const double total = t.cdf.back();
  if (!(total > 0.0)) throw std::runtime_error("degenerate 1-D density");
  for (double& c : t.cdf) c /= total;
  return t;
}

double product_density(const Vec3& v, const DistParams& p) {
  return pdf1d(v.x, p.alpha.x, p.beta.x) * pdf1d(v.y, p.alpha.y, p.beta.y) *
         pdf1d(v.z, p.alpha.z, p.beta.z);
}

}  // namespace

double pdf1d(double v, double alpha, double beta) {
  const double phi = kInvSqrt2Pi * std::exp(-0.5 * v * v);
  const double Phi = alpha == 0.0 ? 0.5 : 0.5 * (1.0 + std::erf(alpha * v * kInvSqrt2));
  const double damp = beta == 0.0 ? 1.0 : std::exp(-0.25 * beta * v * v * v * v);
  return 2.0 * phi * Phi * damp;
}

double pdf3d(const Vec3& v, const DistParams& params, double C) {
  if (!(C > 0.0)) throw std::invalid_argument("normalization constant must be positive");
  if (v.norm2() > params.v_r * params.v_r) return 0.0;
  return C * product_density(v, params);
}

GaussLegendre gauss_legendre(int n) {
  if (n < 2) throw std::invalid_argument("quadrature needs at least 2 points per axis");
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  // Newton iteration on P_n from the Chebyshev initial guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  return gl;
}

double normalization_constant(const DistParams& params, const QuadratureGrid& grid) {
  const double mass = integrate_shell(grid, 0.0, params.v_r,
                                      [&](const Vec3& v) { return product_density(v, params); });
  if (!(mass > 0.0)) throw std::runtime_error("density carries no mass inside the ball");
  return 1.0 / mass;
}

double reference_moment(const DistParams& params, const MomentKey& key, const QuadratureGrid& grid,
                        double C) {
  return C * integrate_shell(grid, 0.0, params.v_r, [&](const Vec3& v) {
           return ipow(v.x, key.kx) * ipow(v.y, key.ky) * ipow(v.z, key.kz) *
                  product_density(v, params);
         });
}

double reference_moment(const DistParams& params, const MomentKey& key, const QuadratureGrid& grid) {
  return reference_moment(params, key, grid, normalization_constant(params, grid));
}

double reference_tail(const DistParams& params, double R, const QuadratureGrid& grid, double C) {
  if (R < 0.0 || R > params.v_r) throw std::invalid_argument("tail radius must lie in [0, v_r]");
  if (R == params.v_r) return 0.0;
  return C * integrate_shell(grid, R, params.v_r,
                             [&](const Vec3& v) { return product_density(v, params); });
}

double reference_tail(const DistParams& params, double R, const QuadratureGrid& grid) {
  return reference_tail(params, R, grid, normalization_constant(params, grid));
}

Ensemble sample_dsmc_like(const DistParams& params, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample size must be at least 1");
  const CdfTable tx = make_cdf_table(params.alpha.x, params.beta.x, params.v_r);
  const CdfTable ty = make_cdf_table(params.alpha.y, params.beta.y, params.v_r);
  const CdfTable tz = make_cdf_table(params.alpha.z, params.beta.z, params.v_r);

  std::mt19937_64 rng(seed);
  const double ball2 = params.v_r * params.v_r;
  const double w = 1.0 / static_cast<double>(n);

  Ensemble out;
  for (std::size_t i = 0; i < n; ++i) {
    Vec3 v;
    do {
      v.x = tx.invert(uniform01(rng));
      v.y = ty.invert(uniform01(rng));
      v.z = tz.invert(uniform01(rng));
    } while (v.norm2() > ball2);
    out.push_back({v, w});
  }
  return out;
}

Ensemble sample_swpm_like(const DistParams& params, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample size must be at least 1");
  std::mt19937_64 rng(seed);

  std::vector<Vec3> velocities(n);
  std::vector<double> density(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = params.v_r * std::cbrt(uniform01(rng));
    const double mu = 2.0 * uniform01(rng) - 1.0;
    const double phi = 2.0 * std::numbers::pi * uniform01(rng);
    const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    velocities[i] = {r * st * std::cos(phi), r * st * std::sin(phi), r * mu};
    density[i] = product_density(velocities[i], params);
  }

  const double total = pairwise_sum(density.data(), density.size());
  if (!(total > 0.0)) throw std::runtime_error("sampled density sums to zero");

  Ensemble out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({velocities[i], density[i] / total});
  return out;
}

}  // namespace swpm
