// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "swpm/moments.hpp"
#include "swpm/particle.hpp"

namespace swpm {

/// Skewed, kurtosis-damped Maxwellian test family: per-axis densities
/// 2 phi(v) Phi(alpha v) exp(-beta v^4 / 4), normalized over the ball
/// |v| <= v_r.
struct DistParams {
  Vec3 alpha = {0.0, 0.0, 0.0};  // skewness per axis
  Vec3 beta = {0.0, 0.0, 0.0};   // kurtosis damping per axis, >= 0
  double v_r = 7.0;              // support ball radius
};

/// Spherical product rule over the ball: Gauss-Legendre nodes in radius and
/// in cos(theta), uniform midpoints in the azimuth, `points_per_axis` of
/// each. Radial subranges are exact, so shell integrals carry no boundary
/// error.
struct QuadratureGrid {
  int points_per_axis = 128;
};

/// Unnormalized 1-D density 2 phi(v) Phi(alpha v) exp(-beta v^4 / 4).
double pdf1d(double v, double alpha, double beta);

/// C * product of the per-axis densities inside the ball, 0 outside.
double pdf3d(const Vec3& v, const DistParams& params, double C);

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

/// Integral of f(v) over the shell r_lo <= |v| <= r_hi.
template <class F>
double integrate_shell(const QuadratureGrid& grid, double r_lo, double r_hi, const F& f) {
  const int n = grid.points_per_axis;
  const GaussLegendre gl = gauss_legendre(n);
  const double two_pi = 6.283185307179586476925286766559;
  const double wphi = two_pi / n;

  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = 0.5 * (r_hi + r_lo) + 0.5 * (r_hi - r_lo) * gl.nodes[i];
    const double wr = 0.5 * (r_hi - r_lo) * gl.weights[i] * r * r;
    for (int j = 0; j < n; ++j) {
      const double mu = gl.nodes[j];
      const double wmu = gl.weights[j];
      const double sin_theta = std::sqrt(std::max(0.0, 1.0 - mu * mu));
      double slice = 0.0;
      for (int k = 0; k < n; ++k) {
        const double phi = two_pi * (k + 0.5) / n;
        const Vec3 v = {r * sin_theta * std::cos(phi), r * sin_theta * std::sin(phi), r * mu};
        slice += f(v);
      }
      total += wr * wmu * wphi * slice;
    }
  }
  return total;
}

/// C making the ball integral of the product density equal to one.
double normalization_constant(const DistParams& params, const QuadratureGrid& grid);

/// Ball-restricted integral of v^key times the normalized density.
double reference_moment(const DistParams& params, const MomentKey& key, const QuadratureGrid& grid);
double reference_moment(const DistParams& params, const MomentKey& key, const QuadratureGrid& grid,
                        double C);

/// Mass of the normalized density on the shell R <= |v| <= v_r.
double reference_tail(const DistParams& params, double R, const QuadratureGrid& grid);
double reference_tail(const DistParams& params, double R, const QuadratureGrid& grid, double C);

/// Equal-weight sample: each velocity component drawn by inverse transform
/// from the 1-D density truncated to [-v_r, v_r]; draws outside the ball are
/// rejected and redrawn. Concentrates particles near the density peak.
Ensemble sample_dsmc_like(const DistParams& params, std::size_t n, std::uint64_t seed);

/// Velocities uniform in the ball, weights proportional to the density at
/// the sampled point and normalized to unit total. Keeps the particle count
/// per velocity-space volume flat out to v_r.
Ensemble sample_swpm_like(const DistParams& params, std::size_t n, std::uint64_t seed);

}  // namespace swpm
