// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swpm/distributions.hpp"
#include "swpm/grouping.hpp"
#include "swpm/moments.hpp"
#include "swpm/schemes.hpp"

namespace swpm {

/// One tracked statistic: a moment key or a tail radius.
struct TrackedQuantity {
  bool is_tail = false;
  MomentKey key;
  double radius = 0.0;

  std::string label() const;
  static TrackedQuantity for_moment(const MomentKey& key) { return {false, key, 0.0}; }
  static TrackedQuantity for_tail(double radius) { return {true, {}, radius}; }
};

enum class SamplerKind { Dsmc, Swpm };
enum class Stage { Pre, Post };

struct ExperimentConfig {
  DistParams dist;
  std::vector<std::size_t> n_orig = {1000};
  std::size_t n_ensembles = 100;
  SamplerKind sampler = SamplerKind::Swpm;
  std::optional<SchemeConfig> scheme;       // empty: sampling baseline only
  std::optional<std::size_t> group_target;  // set: rectangular-box grouping with this N_group
  std::vector<TrackedQuantity> tracked;
  std::uint64_t master_seed = 0;
  int quad_points = 128;
};

/// Ensemble statistics of one quantity at one population size.
struct StatRecord {
  Stage stage = Stage::Pre;
  std::string scheme;    // "none" when no reduction ran
  std::string sampler;   // "dsmc" | "swpm"
  std::string grouping;  // "none" | "rectbox"
  std::size_t n_orig = 0;
  std::string quantity;
  double mean = 0.0;
  double stddev = 0.0;
  double reference = 0.0;
  // Error statistics over ensembles (post stage only): E_abs = |post - pre|,
  // E_rel = (post - pre)/|pre|, replaced by E_abs when |pre| < 1e-14.
  double e_abs_mean = 0.0;
  double e_rel_mean = 0.0;
  double e_rel_abs_mean = 0.0;
  bool rel_is_abs = false;  // some ensemble fell back to the absolute error
};

std::uint64_t ensemble_seed(std::uint64_t master_seed, std::size_t index);

/// Line-oriented "key = value" text; '#' starts a comment; unknown keys are
/// rejected.
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

/// Runs the sampling / reduction study: for every population size, the
/// pre-reduction statistics over seeded ensembles and, when a scheme is
/// configured, the post-reduction and error statistics. Deterministic for a
/// fixed master seed regardless of the thread count.
std::vector<StatRecord> run_experiment(const ExperimentConfig& config, int threads = 1);

struct ErrorSummaryRow {
  std::string scheme;
  std::size_t n_orig = 0;
  std::string quantity;
  double e_abs_mean = 0.0;
  double e_rel_mean = 0.0;
  double e_rel_abs_mean = 0.0;
  bool rel_is_abs = false;
};

/// Post-stage error rows keyed by (scheme, n_orig, quantity), in record order.
std::vector<ErrorSummaryRow> summarize_errors(const std::vector<StatRecord>& records);

std::string records_to_csv(const std::vector<StatRecord>& records);
std::string summary_to_csv(const std::vector<ErrorSummaryRow>& rows);

std::string to_string(SamplerKind kind);
std::string format_double(double value);  // shortest round-trip "%.17g"

}  // namespace swpm
