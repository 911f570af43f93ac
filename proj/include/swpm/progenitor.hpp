// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <vector>

#include "swpm/moments.hpp"
#include "swpm/particle.hpp"

namespace swpm {

class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense linear system P w = mu mapping reduced-particle weights to moments:
/// entry (i, j) is the monomial of velocity j for moment key i (0^0 = 1).
struct ProgenitorSystem {
  std::vector<MomentKey> keys;    // rows
  std::vector<Vec3> velocities;   // columns
  std::vector<double> matrix;     // row-major, rows() x cols()

  std::size_t rows() const { return keys.size(); }
  std::size_t cols() const { return velocities.size(); }
  double entry(std::size_t i, std::size_t j) const { return matrix[i * cols() + j]; }
};

ProgenitorSystem build_progenitor(const std::vector<MomentKey>& keys,
                                  const std::vector<Vec3>& velocities);

/// P w, for residual checks.
std::vector<double> multiply(const ProgenitorSystem& system, const std::vector<double>& weights);

/// Solves the square system by Gaussian elimination with scaled partial
/// pivoting. Throws SingularSystemError when a pivot falls below 1e-12 of
/// its row scale or the residual exceeds 1e-10 * |mu|_inf (floor 1e-12).
std::vector<double> solve_square(const ProgenitorSystem& system, const std::vector<double>& mu);

struct MomentDiscrepancy {
  MomentKey key;
  double original = 0.0;
  double reduced = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;  // abs_error when |original| < 1e-14 (rel_is_abs set)
  bool rel_is_abs = false;
};

struct VerifyReport {
  std::vector<MomentDiscrepancy> entries;

  double max_abs() const;
  /// Largest |relative| error over keys with a nonzero target.
  double max_rel_nonzero() const;
  /// Largest absolute error over keys whose target is treated as zero.
  double max_abs_zero() const;
  /// Worst discrepancy: relative where defined, absolute otherwise.
  double max_discrepancy() const;
};

/// Per-moment discrepancies between two ensembles for all keys of order <= K.
VerifyReport verify_reduction(const Ensemble& original, const Ensemble& reduced, int K);

/// Same report restricted to an explicit key set.
VerifyReport verify_keys(const Ensemble& original, const Ensemble& reduced,
                         const std::vector<MomentKey>& keys);

}  // namespace swpm
