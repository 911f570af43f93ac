// SPDX-License-Identifier: Apache-2.0
#include "swpm/grouping.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

namespace swpm {

namespace {

int clamp_index(double position, double side, int count) {
  const int i = static_cast<int>(std::floor(position / side));
  return std::clamp(i, 0, count - 1);
}

// floor(x^(1/3)) as an exact integer, guarding cbrt rounding.
int floor_cbrt(double x) {
  int c = static_cast<int>(std::floor(std::cbrt(std::max(x, 0.0))));
  while (static_cast<double>(c + 1) * (c + 1) * (c + 1) <= x) ++c;
  while (c > 0 && static_cast<double>(c) * c * c > x) --c;
  return c;
}

}  // namespace

std::size_t BoxGrid::box_index(const Vec3& v) const {
  const Vec3 side = side_lengths();
  const int ix = clamp_index(v.x + v_r, side.x, counts[0]);
  const int iy = clamp_index(v.y + v_r, side.y, counts[1]);
  const int iz = clamp_index(v.z + v_r, side.z, counts[2]);
  return (static_cast<std::size_t>(ix) * counts[1] + iy) * counts[2] + iz;
}

BoxGrid plan_boxes(std::size_t n_orig, const GroupingConfig& config) {
  if (config.n_group < 2) throw std::invalid_argument("group size target must be at least 2");
  if (config.n_group <= static_cast<std::size_t>(reduced_particle_budget(config.scheme.variant))) {
    throw std::invalid_argument("group size target must exceed the scheme's reduced size");
  }
  if (n_orig < config.n_group) throw std::invalid_argument("population smaller than one group");

  const double n_groups = (6.0 / std::numbers::pi) * static_cast<double>(n_orig) /
                          static_cast<double>(config.n_group);
  const int c = std::max(1, floor_cbrt(n_groups));
  const int rest = std::max(1, static_cast<int>(std::floor(n_groups / (static_cast<double>(c) * c))));

  // The remainder count lands on one axis chosen at random; the other two
  // take the cube-root count.
  std::mt19937_64 rng(config.seed);
  const int remainder_axis = static_cast<int>(rng() % 3);

  BoxGrid grid;
  grid.v_r = config.v_r;
  grid.counts = {c, c, c};
  grid.counts[remainder_axis] = rest;
  return grid;
}

std::vector<Ensemble> group_particles(const Ensemble& ensemble, const BoxGrid& grid) {
  std::map<std::size_t, Ensemble> boxes;
  for (const auto& p : ensemble) boxes[grid.box_index(p.v)].push_back(p);

  std::vector<Ensemble> groups;
  groups.reserve(boxes.size());
  for (auto& [index, group] : boxes) groups.push_back(std::move(group));
  return groups;
}

GroupedReduceResult reduce_grouped(const Ensemble& ensemble, const GroupingConfig& config) {
  const BoxGrid grid = plan_boxes(ensemble.size(), config);
  const auto groups = group_particles(ensemble, grid);

  GroupedReduceResult result;
  result.grouping.boxes_total = grid.box_count();
  result.grouping.boxes_occupied = groups.size();
  const double ball2 = config.v_r * config.v_r;
  for (const auto& p : ensemble) {
    if (p.v.norm2() > ball2) ++result.grouping.out_of_ball;
  }

  result.groups.reserve(groups.size());
  for (const auto& group : groups) {
    result.grouping.min_group_size =
        result.grouping.min_group_size == 0
            ? group.size()
            : std::min(result.grouping.min_group_size, group.size());
    result.grouping.max_group_size = std::max(result.grouping.max_group_size, group.size());

    ReduceResult reduced = reduce(group, config.scheme);
    if (reduced.report.pass_through) {
      ++result.grouping.groups_passed;
    } else {
      ++result.grouping.groups_reduced;
    }
    result.ensemble.append(reduced.ensemble);
    result.groups.push_back(std::move(reduced.report));
  }
  return result;
}

}  // namespace swpm
