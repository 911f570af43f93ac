// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "swpm/moments.hpp"
#include "swpm/particle.hpp"

namespace swpm {

/// Reduction variants, named by the highest moment set they preserve:
/// K1 all moments of order <= 1, K2 order <= 2, K2_5 order <= 2 plus the
/// pure third moments, K3 all moments of order <= 3.
enum class SchemeVariant { K1, K2, K2_5, K3 };

std::string to_string(SchemeVariant variant);
SchemeVariant parse_scheme_variant(const std::string& name);

/// Largest standardized-frame output size: 1, 7, 10, 26.
int reduced_particle_budget(SchemeVariant variant);

/// Moment keys the variant preserves in the standardized frame.
std::vector<MomentKey> preserved_keys(SchemeVariant variant);

/// Moment keys preserved in the lab frame after the inverse map. For K2_5
/// this drops the pure third moments: they are matched in the whitened frame
/// only and do not survive the rotation back (they merely improve).
std::vector<MomentKey> lab_preserved_keys(SchemeVariant variant);

struct SpeedPolicy {
  enum class Kind { Minimal, Fixed };
  Kind kind = Kind::Minimal;
  double value = 1e-6;  // bisection tolerance (Minimal) or the speed itself (Fixed)

  static SpeedPolicy minimal(double tolerance = 1e-6) { return {Kind::Minimal, tolerance}; }
  static SpeedPolicy fixed(double s) { return {Kind::Fixed, s}; }
};

struct SchemeConfig {
  SchemeVariant variant = SchemeVariant::K2;
  double delta = std::numbers::sqrt2;  // twin speed scaling, s_twin = s / delta
  double gamma = std::numbers::sqrt3;  // quadruplet speed scaling, s_quad = s / gamma
  Vec3 l = {0.5, 0.5, 0.5};            // per-axis third-speed ratios, positive and != 1
  SpeedPolicy speed = SpeedPolicy::minimal();
};

class SpeedTooSmallError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NegativeWeightError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NoFeasibleSpeedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Back-substitution parameters of the three-particle axis blocks and of the
/// center weight, derived from standardized moments and (delta, gamma, l,
/// beta).
struct AxisParams {
  double a = 1.0;
  double b = 0.0;
  double c_plus = 0.0;
  double c_minus = 0.0;
  double d = 0.0;  // numerator of the third-particle weight
};

struct BacksubParams {
  AxisParams x, y, z;
  double a0 = -3.0;
  double b0 = 0.0;
};

/// Signs of the axis-block velocities, chosen so the third particle of each
/// block carries a nonnegative weight.
std::array<int, 3> choose_beta(const MomentVector& mu, const SchemeConfig& config);

BacksubParams compute_backsub_params(const MomentVector& mu, const SchemeConfig& config,
                                     const std::array<int, 3>& beta);

/// Order-1 reduction: preserves total weight and drift exactly. In a frame
/// with zero first moments this is a single particle at the origin.
Ensemble solve_k1(const MomentVector& mu);

/// Order-2 reduction of a standardized group: a center particle of weight
/// 1 - 3/s^2 plus six axis particles at speed s with weight 1/(2 s^2) each.
/// Requires s >= sqrt(3).
Ensemble solve_k2(const MomentVector& mu, double s);

/// Four symmetrically placed particles reproducing M111 and cancelling in
/// every other moment that is odd in some axis.
Ensemble solve_quadruplet(double m111, double s_quad);

enum class PlanePair { XY, XZ, YZ };

/// Twin pairs for the three mixed moments of one coordinate plane, ordered
/// (M110, M120, M210) for XY and analogously for XZ / YZ. Pairs with zero
/// moment are omitted.
Ensemble solve_twins(PlanePair plane, const std::array<double, 3>& moments, double s_twin);

enum class Axis { X, Y, Z };

/// Two or three particles on one coordinate axis solving the pure-moment
/// block after the twin and quadruplet contributions were subtracted.
Ensemble solve_axis_block(Axis axis, const AxisParams& params, int beta, double l, double s);

struct CenterDiagnostics {
  double w0 = 0.0;         // mass-balance value actually used
  double w0_closed = 0.0;  // closed-form value, recorded for comparison only
};

/// Order-3 reduction of a standardized group (<= 26 particles).
Ensemble solve_k3(const MomentVector& mu, const SchemeConfig& config, double s,
                  CenterDiagnostics* diag = nullptr);

/// Order-2 reduction that additionally preserves the pure third moments
/// (<= 10 particles); mixed moments are treated as zero.
Ensemble solve_k2_5(const MomentVector& mu, const SchemeConfig& config, double s,
                    CenterDiagnostics* diag = nullptr);

/// Smallest speed (within the policy tolerance) at which every weight of the
/// configured variant is nonnegative. Throws NoFeasibleSpeedError when no
/// speed up to 1e6 works.
double select_min_speed(const MomentVector& mu, const SchemeConfig& config);

struct ReduceReport {
  std::size_t input_count = 0;
  std::size_t output_count = 0;
  double s = 0.0;
  bool pass_through = false;
  double max_discrepancy = 0.0;  // worst preserved-moment error, relative where defined
  std::string note;
};

struct ReduceResult {
  Ensemble ensemble;
  ReduceReport report;
};

/// Full pipeline: standardize, solve the configured variant, map back.
/// Groups that are too small, degenerate, or infeasible pass through
/// unchanged with the reason recorded in the report.
ReduceResult reduce(const Ensemble& ensemble, const SchemeConfig& config);

}  // namespace swpm
