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

#include "roomscope/room_mask.hpp"

#include <algorithm>
#include <cmath>

#include "roomscope/error.hpp"

namespace roomscope {

std::size_t RoomMask::count() const {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), std::uint8_t{1}));
}

RoomMask rasterize_polygon(const RoomPolygon& poly, const GridSpec& spec) {
  spec.validate();
  RoomMask mask{spec, std::vector<std::uint8_t>(spec.cell_count(), 0)};
  const auto& ring = poly.vertices;
  const std::size_t n = ring.size();
  std::vector<double> crossings;

  for (std::size_t row = 0; row < spec.height; ++row) {
    const double y = spec.center_y(row);
    crossings.clear();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const Vec2 a = ring[i];
      const Vec2 b = ring[j];
      if ((a.y > y) != (b.y > y)) {
        crossings.push_back((b.x - a.x) * (y - a.y) / (b.y - a.y) + a.x);
      }
    }
    std::sort(crossings.begin(), crossings.end());
    // A center cx is inside when an odd number of crossings lie strictly to
    // its right, i.e. cx in [x_{2i}, x_{2i+1}).
    for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
      const double lo = crossings[k];
      const double hi = crossings[k + 1];
      const double first = std::ceil((lo - spec.origin_x) / spec.cell_size - 0.5);
      auto col = static_cast<std::ptrdiff_t>(std::max(0.0, first));
      while (col > 0 && spec.center_x(static_cast<std::size_t>(col - 1)) >= lo) --col;
      for (; col < static_cast<std::ptrdiff_t>(spec.width); ++col) {
        const double cx = spec.center_x(static_cast<std::size_t>(col));
        if (cx < lo) continue;
        if (cx >= hi) break;
        mask.cells[row * spec.width + static_cast<std::size_t>(col)] = 1;
      }
    }
  }
  if (mask.count() == 0) throw Error("room '" + poly.id + "': empty mask");
  return mask;
}

double mask_iou(const RoomMask& a, const RoomMask& b) {
  if (!(a.spec == b.spec) || a.cells.size() != b.cells.size()) {
    throw Error("mask_iou: grid specs do not match");
  }
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    inter += (a.cells[i] & b.cells[i]) != 0;
    uni += (a.cells[i] | b.cells[i]) != 0;
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace roomscope
