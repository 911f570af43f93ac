// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <stdexcept>
#include <utility>

#include "swpm/particle.hpp"

namespace swpm {

struct Mat3 {
  // row-major
  std::array<std::array<double, 3>, 3> a{};

  static Mat3 identity();
  Vec3 mul(const Vec3& v) const;
  Mat3 mul(const Mat3& other) const;
  Mat3 transposed() const;
  double det() const;
  double frobenius() const;
};

/// Raised when the central covariance of a group is (numerically) rank
/// deficient; such groups cannot be whitened and must be passed through.
class DegenerateCovarianceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Eig3 {
  std::array<double, 3> values;  // descending
  Mat3 vectors;                  // columns are the eigenvectors, det = +1
};

/// Eigendecomposition of a symmetric 3x3 matrix by cyclic Jacobi rotations
/// (32-sweep cap, off-diagonal tolerance 1e-14 relative to the Frobenius
/// norm). Eigenvalues descending, right-handed eigenvector frame.
Eig3 symmetric_eig3(const Mat3& m);

/// Affine map between the lab frame and the frame in which the ensemble has
/// unit mass, zero mean and identity covariance.
struct StandardizationTransform {
  double mass = 1.0;
  Vec3 mean;
  Mat3 rotation;  // columns: principal axes of the central covariance
  Vec3 scales;    // square roots of the covariance eigenvalues
};

/// Whitens the ensemble. Throws DegenerateCovarianceError when any
/// covariance eigenvalue falls at or below 1e-10 times the largest one.
std::pair<Ensemble, StandardizationTransform> standardize(const Ensemble& ensemble);

/// Inverse map: v_lab = R * diag(scales) * v + mean, w_lab = mass * w.
Ensemble destandardize(const Ensemble& ensemble, const StandardizationTransform& t);

}  // namespace swpm
