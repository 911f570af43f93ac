// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "swpm/particle.hpp"

namespace swpm {

/// Exponent triple (kx, ky, kz) identifying the moment
/// M_{kx ky kz} = sum_j w_j vx_j^kx vy_j^ky vz_j^kz, with 0^0 = 1.
struct MomentKey {
  int kx = 0;
  int ky = 0;
  int kz = 0;

  int order() const { return kx + ky + kz; }
  bool operator==(const MomentKey&) const = default;
};

std::string to_string(const MomentKey& key);  // "M210"

/// Number of moments of order <= K in dim velocity dimensions (dim 2 or 3).
int n_moments(int K, int dim);

/// Keys of all moments of order <= K in the canonical block order:
/// constant; pure x, y, z; mixed xy, xz, yz (lexicographic within each
/// block); fully mixed xyz (lexicographic). Supports K <= 5.
std::vector<MomentKey> canonical_keys(int K);

/// x^k with the 0^0 = 1 convention.
double ipow(double x, int k);

/// Pairwise (tree) accumulation; insensitive to input permutations at the
/// ~1e-15 relative level for well-conditioned sums.
double pairwise_sum(const double* a, std::size_t n);

namespace detail {
template <class F>
double pairwise_sum_range(std::size_t lo, std::size_t hi, const F& f) {
  const std::size_t n = hi - lo;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += f(i);
    return s;
  }
  const std::size_t mid = lo + n / 2;
  return pairwise_sum_range(lo, mid, f) + pairwise_sum_range(mid, hi, f);
}
}  // namespace detail

template <class F>
double pairwise_sum(std::size_t n, const F& f) {
  return detail::pairwise_sum_range(0, n, f);
}

double moment(const Ensemble& ensemble, const MomentKey& key);

/// Moments up to order K in the canonical block order.
class MomentVector {
 public:
  MomentVector(int order, std::vector<double> values);

  int order() const { return order_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<MomentKey>& keys() const { return keys_; }

  /// Value lookup by key; throws if the key is not of order <= K.
  double at(const MomentKey& key) const;

 private:
  int order_;
  std::vector<MomentKey> keys_;
  std::vector<double> values_;
};

/// All moments of the ensemble up to order K (0 <= K <= 3).
MomentVector moment_vector(const Ensemble& ensemble, int K);

/// Total weight carried at speeds |v| >= R (boundary inclusive).
double tail_functional(const Ensemble& ensemble, double R);

}  // namespace swpm
