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

#ifndef ROOMSCOPE_ROOM_MASK_HPP_
#define ROOMSCOPE_ROOM_MASK_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "roomscope/grid.hpp"
#include "roomscope/polygon.hpp"

namespace roomscope {

struct RoomMask {
  GridSpec spec;
  std::vector<std::uint8_t> cells;  // row-major, 0 or 1

  [[nodiscard]] std::size_t count() const;
  [[nodiscard]] bool at(std::size_t col, std::size_t row) const {
    return cells[row * spec.width + col] != 0;
  }

  friend bool operator==(const RoomMask&, const RoomMask&) = default;
};

// A cell is set iff its center lies inside the polygon (even-odd rule).
// Throws Error("empty mask") when no cell center is covered.
RoomMask rasterize_polygon(const RoomPolygon& poly, const GridSpec& spec);

// |a ∩ b| / |a ∪ b|; two empty masks give 0.
double mask_iou(const RoomMask& a, const RoomMask& b);

}  // namespace roomscope

#endif  // ROOMSCOPE_ROOM_MASK_HPP_
