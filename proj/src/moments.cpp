// SPDX-License-Identifier: Apache-2.0
#include "swpm/moments.hpp"

#include <stdexcept>

namespace swpm {

std::string to_string(const MomentKey& key) {
  return "M" + std::to_string(key.kx) + std::to_string(key.ky) + std::to_string(key.kz);
}

int n_moments(int K, int dim) {
  if (K < 0) throw std::invalid_argument("moment order must be nonnegative");
  if (dim == 2) return 1 + 2 * K + K * (K - 1) / 2;
  if (dim == 3) return 1 + 3 * K + 3 * K * (K - 1) / 2 + K * (K - 1) * (K - 2) / 6;
  throw std::invalid_argument("velocity dimension must be 2 or 3");
}

std::vector<MomentKey> canonical_keys(int K) {
  if (K < 0 || K > 5) throw std::invalid_argument("canonical_keys supports orders 0..5");
  std::vector<MomentKey> keys;
  keys.reserve(static_cast<std::size_t>(n_moments(K, 3)));
  keys.push_back({0, 0, 0});
  for (int k = 1; k <= K; ++k) keys.push_back({k, 0, 0});
  for (int k = 1; k <= K; ++k) keys.push_back({0, k, 0});
  for (int k = 1; k <= K; ++k) keys.push_back({0, 0, k});
  for (int kx = 1; kx <= K - 1; ++kx)
    for (int ky = 1; ky <= K - kx; ++ky) keys.push_back({kx, ky, 0});
  for (int kx = 1; kx <= K - 1; ++kx)
    for (int kz = 1; kz <= K - kx; ++kz) keys.push_back({kx, 0, kz});
  for (int ky = 1; ky <= K - 1; ++ky)
    for (int kz = 1; kz <= K - ky; ++kz) keys.push_back({0, ky, kz});
  for (int kx = 1; kx <= K - 2; ++kx)
    for (int ky = 1; ky <= K - kx - 1; ++ky)
      for (int kz = 1; kz <= K - kx - ky; ++kz) keys.push_back({kx, ky, kz});
  return keys;
}

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

double pairwise_sum(const double* a, std::size_t n) {
  return pairwise_sum(n, [a](std::size_t i) { return a[i]; });
}

double moment(const Ensemble& ensemble, const MomentKey& key) {
  const auto& ps = ensemble.particles();
  return pairwise_sum(ps.size(), [&](std::size_t j) {
    const auto& p = ps[j];
    return p.w * ipow(p.v.x, key.kx) * ipow(p.v.y, key.ky) * ipow(p.v.z, key.kz);
  });
}

MomentVector::MomentVector(int order, std::vector<double> values)
    : order_(order), keys_(canonical_keys(order)), values_(std::move(values)) {
  if (values_.size() != keys_.size()) {
    throw std::invalid_argument("moment vector length does not match its order");
  }
}

double MomentVector::at(const MomentKey& key) const {
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    if (keys_[i] == key) return values_[i];
  }
  throw std::out_of_range("moment key " + to_string(key) + " beyond order " + std::to_string(order_));
}

MomentVector moment_vector(const Ensemble& ensemble, int K) {
  if (K < 0 || K > 3) throw std::invalid_argument("moment_vector supports orders 0..3");
  const auto keys = canonical_keys(K);
  std::vector<double> values(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) values[i] = moment(ensemble, keys[i]);
  return {K, std::move(values)};
}

double tail_functional(const Ensemble& ensemble, double R) {
  if (R < 0.0) throw std::invalid_argument("tail radius must be nonnegative");
  const double r2 = R * R;
  const auto& ps = ensemble.particles();
  return pairwise_sum(ps.size(), [&](std::size_t j) {
    return ps[j].v.norm2() >= r2 ? ps[j].w : 0.0;
  });
}

}  // namespace swpm
