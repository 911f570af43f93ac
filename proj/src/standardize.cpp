// SPDX-License-Identifier: Apache-2.0
#include "swpm/standardize.hpp"

#include <algorithm>
#include <cmath>

#include "swpm/moments.hpp"

namespace swpm {

Mat3 Mat3::identity() {
  Mat3 m;
  m.a[0][0] = m.a[1][1] = m.a[2][2] = 1.0;
  return m;
}

Vec3 Mat3::mul(const Vec3& v) const {
  return {a[0][0] * v.x + a[0][1] * v.y + a[0][2] * v.z,
          a[1][0] * v.x + a[1][1] * v.y + a[1][2] * v.z,
          a[2][0] * v.x + a[2][1] * v.y + a[2][2] * v.z};
}

Mat3 Mat3::mul(const Mat3& other) const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * other.a[k][j];
      r.a[i][j] = s;
    }
  return r;
}

Mat3 Mat3::transposed() const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.a[i][j] = a[j][i];
  return r;
}

double Mat3::det() const {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

double Mat3::frobenius() const {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += a[i][j] * a[i][j];
  return std::sqrt(s);
}

Eig3 symmetric_eig3(const Mat3& m) {
  // Work on the symmetrized copy; rotations accumulate into V.
  Mat3 s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s.a[i][j] = 0.5 * (m.a[i][j] + m.a[j][i]);
  Mat3 v = Mat3::identity();

  const double tol = 1e-14 * s.frobenius();
  for (int sweep = 0; sweep < 32; ++sweep) {
    double off = std::sqrt(s.a[0][1] * s.a[0][1] + s.a[0][2] * s.a[0][2] + s.a[1][2] * s.a[1][2]);
    if (off <= tol) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (s.a[p][q] == 0.0) continue;
        const double theta = (s.a[q][q] - s.a[p][p]) / (2.0 * s.a[p][q]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < 3; ++k) {
          const double skp = s.a[k][p], skq = s.a[k][q];
          s.a[k][p] = c * skp - sn * skq;
          s.a[k][q] = sn * skp + c * skq;
        }
        for (int k = 0; k < 3; ++k) {
          const double spk = s.a[p][k], sqk = s.a[q][k];
          s.a[p][k] = c * spk - sn * sqk;
          s.a[q][k] = sn * spk + c * sqk;
        }
        for (int k = 0; k < 3; ++k) {
          const double vkp = v.a[k][p], vkq = v.a[k][q];
          v.a[k][p] = c * vkp - sn * vkq;
          v.a[k][q] = sn * vkp + c * vkq;
        }
      }
    }
  }

  std::array<int, 3> perm = {0, 1, 2};
  std::array<double, 3> lam = {s.a[0][0], s.a[1][1], s.a[2][2]};
  std::sort(perm.begin(), perm.end(), [&](int i, int j) { return lam[i] > lam[j]; });

  Eig3 out;
  for (int j = 0; j < 3; ++j) {
    out.values[j] = lam[perm[j]];
    for (int i = 0; i < 3; ++i) out.vectors.a[i][j] = v.a[i][perm[j]];
  }
  if (out.vectors.det() < 0.0) {
    for (int i = 0; i < 3; ++i) out.vectors.a[i][2] = -out.vectors.a[i][2];
  }
  return out;
}

std::pair<Ensemble, StandardizationTransform> standardize(const Ensemble& ensemble) {
  const double mass = moment(ensemble, {0, 0, 0});
  if (!(mass > 0.0)) throw std::invalid_argument("ensemble must carry positive total weight");

  const Vec3 mean = {moment(ensemble, {1, 0, 0}) / mass,
                     moment(ensemble, {0, 1, 0}) / mass,
                     moment(ensemble, {0, 0, 1}) / mass};

  const auto& ps = ensemble.particles();
  Mat3 cov;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const double cij = pairwise_sum(ps.size(), [&](std::size_t k) {
        const Vec3 d = ps[k].v - mean;
        return ps[k].w * d[i] * d[j];
      }) / mass;
      cov.a[i][j] = cij;
      cov.a[j][i] = cij;
    }
  }

  const Eig3 eig = symmetric_eig3(cov);
  const double eps = std::max(1e-10 * eig.values[0], 1e-300);
  if (!(eig.values[2] > eps)) {
    throw DegenerateCovarianceError("group covariance is numerically rank deficient");
  }

  StandardizationTransform t;
  t.mass = mass;
  t.mean = mean;
  t.rotation = eig.vectors;
  t.scales = {std::sqrt(eig.values[0]), std::sqrt(eig.values[1]), std::sqrt(eig.values[2])};

  const Mat3 rt = t.rotation.transposed();
  Ensemble out;
  for (const auto& p : ps) {
    const Vec3 u = rt.mul(p.v - mean);
    out.push_back({{u.x / t.scales.x, u.y / t.scales.y, u.z / t.scales.z}, p.w / mass});
  }
  return {std::move(out), t};
}

Ensemble destandardize(const Ensemble& ensemble, const StandardizationTransform& t) {
  Ensemble out;
  for (const auto& p : ensemble) {
    const Vec3 scaled = {p.v.x * t.scales.x, p.v.y * t.scales.y, p.v.z * t.scales.z};
    out.push_back({t.rotation.mul(scaled) + t.mean, p.w * t.mass});
  }
  return out;
}

}  // namespace swpm
