// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "swpm/particle.hpp"
#include "swpm/schemes.hpp"

namespace swpm {

/// Equal-volume rectangular boxes tiling the cube [-v_r, v_r]^3 around the
/// simulation ball. Box intervals are half-open except the last one per
/// axis, which is closed, so the boxes partition the cube exactly.
struct BoxGrid {
  double v_r = 7.0;
  std::array<int, 3> counts = {1, 1, 1};

  Vec3 side_lengths() const {
    return {2.0 * v_r / counts[0], 2.0 * v_r / counts[1], 2.0 * v_r / counts[2]};
  }
  std::size_t box_count() const {
    return static_cast<std::size_t>(counts[0]) * counts[1] * counts[2];
  }
  /// Linear box index; velocities outside the cube clamp to the boundary box.
  std::size_t box_index(const Vec3& v) const;
};

struct GroupingConfig {
  double v_r = 7.0;
  std::size_t n_group = 11;  // target particles per group; must exceed the reduced size
  SchemeConfig scheme;
  std::uint64_t seed = 0;  // drives the random assignment of box counts to axes
};

/// Number and shape of boxes for a given population: 6/pi * N/N_group groups
/// overall, the cube-root count on two randomly chosen axes and the
/// remainder on the third, every axis floored at one box.
BoxGrid plan_boxes(std::size_t n_orig, const GroupingConfig& config);

/// Partition of the ensemble by box; empty boxes omitted, groups ordered by
/// linear box index.
std::vector<Ensemble> group_particles(const Ensemble& ensemble, const BoxGrid& grid);

struct GroupingReport {
  std::size_t boxes_total = 0;
  std::size_t boxes_occupied = 0;
  std::size_t groups_reduced = 0;
  std::size_t groups_passed = 0;
  std::size_t min_group_size = 0;
  std::size_t max_group_size = 0;
  std::size_t out_of_ball = 0;  // particles with |v| > v_r, clamped to boundary boxes
};

struct GroupedReduceResult {
  Ensemble ensemble;
  GroupingReport grouping;
  std::vector<ReduceReport> groups;
};

/// Groups the ensemble and reduces every group that is large enough; all
/// other groups pass through unchanged. Output concatenated in box order.
GroupedReduceResult reduce_grouped(const Ensemble& ensemble, const GroupingConfig& config);

}  // namespace swpm
