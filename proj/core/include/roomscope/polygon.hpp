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

#ifndef ROOMSCOPE_POLYGON_HPP_
#define ROOMSCOPE_POLYGON_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace roomscope {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct RoomPolygon {
  std::string id;
  std::vector<Vec2> vertices;  // open ring, either orientation
  double confidence = 1.0;
  std::optional<std::string> label;

  friend bool operator==(const RoomPolygon&, const RoomPolygon&) = default;
};

// Shoelace area, positive for counter-clockwise rings.
double signed_area(std::span<const Vec2> ring);

// True when two non-adjacent edges of the ring touch or cross.
bool self_intersects(std::span<const Vec2> ring);

// Even-odd rule. Points exactly on an edge may go either way.
bool contains_point(std::span<const Vec2> ring, Vec2 p);

// Throws InputError naming the room on < 3 vertices, non-finite values,
// zero area, self-intersection or a confidence outside [0,1].
void validate_polygon(const RoomPolygon& poly);

}  // namespace roomscope

#endif  // ROOMSCOPE_POLYGON_HPP_
