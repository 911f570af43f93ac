// SPDX-License-Identifier: Apache-2.0
#include "swpm/progenitor.hpp"

#include <algorithm>
#include <cmath>

namespace swpm {

ProgenitorSystem build_progenitor(const std::vector<MomentKey>& keys,
                                  const std::vector<Vec3>& velocities) {
  if (keys.empty() || velocities.empty()) {
    throw std::invalid_argument("progenitor system needs at least one key and one velocity");
  }
  ProgenitorSystem sys;
  sys.keys = keys;
  sys.velocities = velocities;
  sys.matrix.resize(keys.size() * velocities.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (std::size_t j = 0; j < velocities.size(); ++j) {
      const auto& v = velocities[j];
      sys.matrix[i * velocities.size() + j] =
          ipow(v.x, keys[i].kx) * ipow(v.y, keys[i].ky) * ipow(v.z, keys[i].kz);
    }
  }
  return sys;
}

std::vector<double> multiply(const ProgenitorSystem& system, const std::vector<double>& weights) {
  if (weights.size() != system.cols()) {
    throw std::invalid_argument("weight vector length does not match system columns");
  }
  std::vector<double> out(system.rows());
  for (std::size_t i = 0; i < system.rows(); ++i) {
    out[i] = pairwise_sum(system.cols(), [&](std::size_t j) {
      return system.entry(i, j) * weights[j];
    });
  }
  return out;
}

std::vector<double> solve_square(const ProgenitorSystem& system, const std::vector<double>& mu) {
  const std::size_t n = system.rows();
  if (system.cols() != n) throw std::invalid_argument("solve_square requires a square system");
  if (mu.size() != n) throw std::invalid_argument("moment vector length does not match system rows");

  std::vector<double> a = system.matrix;
  std::vector<double> b = mu;

  std::vector<double> scale(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) scale[i] = std::max(scale[i], std::abs(a[i * n + j]));
    if (scale[i] == 0.0) throw SingularSystemError("zero row in progenitor matrix");
  }

  std::vector<std::size_t> row(n);
  for (std::size_t i = 0; i < n; ++i) row[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    double best_ratio = std::abs(a[row[k] * n + k]) / scale[row[k]];
    for (std::size_t i = k + 1; i < n; ++i) {
      const double ratio = std::abs(a[row[i] * n + k]) / scale[row[i]];
      if (ratio > best_ratio) {
        best = i;
        best_ratio = ratio;
      }
    }
    std::swap(row[k], row[best]);
    const double pivot = a[row[k] * n + k];
    if (std::abs(pivot) <= 1e-12 * scale[row[k]]) {
      throw SingularSystemError("progenitor matrix is numerically singular (pivot underflow)");
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[row[i] * n + k] / pivot;
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a[row[i] * n + j] -= f * a[row[k] * n + j];
      b[row[i]] -= f * b[row[k]];
    }
  }

  std::vector<double> w(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[row[k]];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[row[k] * n + j] * w[j];
    w[k] = s / a[row[k] * n + k];
  }

  const auto residual = multiply(system, w);
  double res_inf = 0.0, mu_inf = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    res_inf = std::max(res_inf, std::abs(residual[i] - mu[i]));
    mu_inf = std::max(mu_inf, std::abs(mu[i]));
  }
  if (res_inf >= std::max(1e-10 * mu_inf, 1e-12)) {
    throw SingularSystemError("progenitor solve residual too large (ill-conditioned system)");
  }
  return w;
}

double VerifyReport::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, e.abs_error);
  return m;
}

double VerifyReport::max_rel_nonzero() const {
  double m = 0.0;
  for (const auto& e : entries)
    if (!e.rel_is_abs) m = std::max(m, std::abs(e.rel_error));
  return m;
}

double VerifyReport::max_abs_zero() const {
  double m = 0.0;
  for (const auto& e : entries)
    if (e.rel_is_abs) m = std::max(m, e.abs_error);
  return m;
}

double VerifyReport::max_discrepancy() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, std::abs(e.rel_error));
  return m;
}

VerifyReport verify_keys(const Ensemble& original, const Ensemble& reduced,
                         const std::vector<MomentKey>& keys) {
  VerifyReport report;
  report.entries.reserve(keys.size());
  for (const auto& key : keys) {
    MomentDiscrepancy d;
    d.key = key;
    d.original = moment(original, key);
    d.reduced = moment(reduced, key);
    d.abs_error = std::abs(d.reduced - d.original);
    if (std::abs(d.original) < 1e-14) {
      d.rel_is_abs = true;
      d.rel_error = d.abs_error;
    } else {
      d.rel_error = (d.reduced - d.original) / std::abs(d.original);
    }
    report.entries.push_back(d);
  }
  return report;
}

VerifyReport verify_reduction(const Ensemble& original, const Ensemble& reduced, int K) {
  if (K < 0 || K > 3) throw std::invalid_argument("verify_reduction supports orders 0..3");
  return verify_keys(original, reduced, canonical_keys(K));
}

}  // namespace swpm
