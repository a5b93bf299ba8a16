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

#ifndef ROOMSCOPE_BORDER_MAP_HPP_
#define ROOMSCOPE_BORDER_MAP_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "roomscope/grid.hpp"
#include "roomscope/point_cloud.hpp"

namespace roomscope {

// Parameters of the border-enhanced density map.
//
// A slice k is kept when delta_b * S < S_k < delta_t * S, where S_k is the
// occupied-cell count of slice k and S that of the whole-cloud projection.
// A cell is a border cell when it is occupied in at least
// merge_fraction * M of the M kept slices. The final map is
// gamma * density + (1 - gamma) * border.
struct BorderParams {
  std::size_t n_slices = 50;
  double delta_b = 1.0 / 15.0;
  double delta_t = 1.0 / 5.0;
  double merge_fraction = 3.0 / 4.0;
  double gamma = 0.9;

  void validate() const;
};

struct SliceSelection {
  std::vector<std::size_t> selected_indices;  // ascending
  std::vector<std::size_t> occupied_counts;   // S_k, one per slice
  std::size_t reference_count = 0;            // S

  [[nodiscard]] std::size_t m() const { return selected_indices.size(); }
};

SliceSelection select_border_slices(std::span<const OccupancyGrid> slice_grids,
                                    const OccupancyGrid& full_grid,
                                    const BorderParams& params);

// Throws Error("no valid slices; relax BorderParams") when nothing was
// selected.
OccupancyGrid merge_border_map(const SliceSelection& selection,
                               std::span<const OccupancyGrid> slice_grids,
                               const BorderParams& params);

OccupancyGrid combine_maps(const OccupancyGrid& density,
                           const OccupancyGrid& border,
                           const BorderParams& params);

struct BorderMaps {
  SliceSelection selection;
  OccupancyGrid density;
  OccupancyGrid border;
  OccupancyGrid combined;
};

// Full chain: slicing, per-slice projection, slice selection, merge, density
// projection and combination over one grid covering the cloud.
BorderMaps build_border_maps(const PointCloud& cloud, double cell_size,
                             const BorderParams& params);

}  // namespace roomscope

#endif  // ROOMSCOPE_BORDER_MAP_HPP_
