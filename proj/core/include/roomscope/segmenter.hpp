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

#ifndef ROOMSCOPE_SEGMENTER_HPP_
#define ROOMSCOPE_SEGMENTER_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "roomscope/grid.hpp"
#include "roomscope/polygon.hpp"

namespace roomscope {

struct BaselineSegmenterParams {
  double wall_threshold = 0.3;
  // Defaults to 1 m^2 worth of cells at the map's resolution.
  std::optional<std::size_t> min_room_cells;
};

// Geometric stand-in for a learned region detector working on the combined
// map: cells >= wall_threshold are walls, 1-cell wall gaps are closed with a
// 3x3 closing, and each 4-connected free component that does not touch the
// grid edge and has at least min_room_cells cells becomes one room. The room
// polygon is the component's outer cell boundary (holes are filled).
//
// Rooms are numbered "room_<i>" in row-major order of their first cell.
std::vector<RoomPolygon> segment_rooms_baseline(const OccupancyGrid& combined,
                                                const BaselineSegmenterParams& params = {});

}  // namespace roomscope

#endif  // ROOMSCOPE_SEGMENTER_HPP_
