// Copyright 2026 The Roomscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "roomscope/border_map.hpp"

#include <cmath>
#include <string>

#include "roomscope/error.hpp"

namespace roomscope {

void BorderParams::validate() const {
  if (n_slices == 0) throw InputError("invalid slice count");
  if (!(delta_b >= 0.0 && delta_b < delta_t && delta_t <= 1.0)) {
    throw InputError("border params require 0 <= delta_b < delta_t <= 1");
  }
  if (!(merge_fraction > 0.0 && merge_fraction <= 1.0)) {
    throw InputError("merge_fraction must lie in (0, 1]");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw InputError("gamma must lie in [0, 1]");
}

namespace {

// Fractions such as 1/15 are not exact in binary; the guard makes equality
// with delta * S (or merge_fraction * M) resolve as if it were exact.
constexpr double kThresholdGuard = 1e-9;

void require_same_spec(const OccupancyGrid& a, const OccupancyGrid& b) {
  if (!(a.spec() == b.spec())) throw Error("grid specs do not match");
}

}  // namespace

SliceSelection select_border_slices(std::span<const OccupancyGrid> slice_grids,
                                    const OccupancyGrid& full_grid,
                                    const BorderParams& params) {
  params.validate();
  SliceSelection sel;
  sel.reference_count = full_grid.occupied_count();
  if (sel.reference_count == 0) throw Error("empty scene projection");

  const double s = static_cast<double>(sel.reference_count);
  const double guard = kThresholdGuard * s;
  const double lower = params.delta_b * s + guard;
  const double upper = params.delta_t * s - guard;
  sel.occupied_counts.reserve(slice_grids.size());
  for (std::size_t k = 0; k < slice_grids.size(); ++k) {
    require_same_spec(slice_grids[k], full_grid);
    const std::size_t count = slice_grids[k].occupied_count();
    sel.occupied_counts.push_back(count);
    const double sk = static_cast<double>(count);
    if (lower < sk && sk < upper) sel.selected_indices.push_back(k);
  }
  return sel;
}

OccupancyGrid merge_border_map(const SliceSelection& selection,
                               std::span<const OccupancyGrid> slice_grids,
                               const BorderParams& params) {
  params.validate();
  if (selection.m() == 0) throw Error("no valid slices; relax BorderParams");
  const GridSpec& spec = slice_grids[selection.selected_indices.front()].spec();
  const std::size_t n = spec.cell_count();

  std::vector<std::size_t> votes(n, 0);
  for (std::size_t k : selection.selected_indices) {
    if (k >= slice_grids.size()) throw Error("selected slice index out of range");
    const OccupancyGrid& g = slice_grids[k];
    if (!(g.spec() == spec)) throw Error("grid specs do not match");
    const auto cells = g.cells();
    for (std::size_t i = 0; i < n; ++i) votes[i] += cells[i] != 0.0 ? 1 : 0;
  }

  const double m = static_cast<double>(selection.m());
  const double threshold = params.merge_fraction * m - kThresholdGuard * m;
  OccupancyGrid border(spec, GridKind::kBorder);
  auto out = border.mutable_cells();
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<double>(votes[i]) >= threshold ? 1.0 : 0.0;
  }
  return border;
}

OccupancyGrid combine_maps(const OccupancyGrid& density, const OccupancyGrid& border,
                           const BorderParams& params) {
  params.validate();
  require_same_spec(density, border);
  if (density.kind() != GridKind::kDensity) throw Error("combine_maps expects a density grid");
  if (border.kind() != GridKind::kBorder) throw Error("combine_maps expects a border grid");

  OccupancyGrid combined(density.spec(), GridKind::kCombined);
  const auto d = density.cells();
  const auto b = border.cells();
  auto out = combined.mutable_cells();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = params.gamma * d[i] + (1.0 - params.gamma) * b[i];
  }
  return combined;
}

BorderMaps build_border_maps(const PointCloud& cloud, double cell_size,
                             const BorderParams& params) {
  params.validate();
  const GridSpec spec = grid_covering(cloud.points, cell_size);
  const std::vector<PointCloud> slices = slice_point_cloud(cloud, params.n_slices);

  std::vector<OccupancyGrid> slice_grids;
  slice_grids.reserve(slices.size());
  for (const PointCloud& s : slices) slice_grids.push_back(project_occupancy(s.points, spec));

  const OccupancyGrid full = project_occupancy(cloud.points, spec);
  SliceSelection selection = select_border_slices(slice_grids, full, params);
  OccupancyGrid border = merge_border_map(selection, slice_grids, params);
  OccupancyGrid density = project_density(cloud.points, spec);
  OccupancyGrid combined = combine_maps(density, border, params);
  return {std::move(selection), std::move(density), std::move(border), std::move(combined)};
}

}  // namespace roomscope
