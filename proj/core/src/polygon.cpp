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

#include "roomscope/polygon.hpp"

#include <algorithm>
#include <cmath>

#include "roomscope/error.hpp"

namespace roomscope {
namespace {

double cross(Vec2 o, Vec2 a, Vec2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_touch(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const int d1 = sign(cross(c, d, a));
  const int d2 = sign(cross(c, d, b));
  const int d3 = sign(cross(a, b, c));
  const int d4 = sign(cross(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

}  // namespace

double signed_area(std::span<const Vec2> ring) {
  double twice = 0.0;
  for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
    const Vec2 a = ring[i];
    const Vec2 b = ring[(i + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

bool self_intersects(std::span<const Vec2> ring) {
  const std::size_t n = ring.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = ring[i];
    const Vec2 b = ring[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_touch(a, b, ring[j], ring[(j + 1) % n])) return true;
    }
  }
  // Adjacent edges that fold back onto each other.
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = ring[(i + n - 1) % n];
    const Vec2 v = ring[i];
    const Vec2 b = ring[(i + 1) % n];
    if (cross(a, v, b) == 0.0) {
      const double dot = (a.x - v.x) * (b.x - v.x) + (a.y - v.y) * (b.y - v.y);
      if (dot > 0.0) return true;
    }
  }
  return false;
}

bool contains_point(std::span<const Vec2> ring, Vec2 p) {
  bool inside = false;
  for (std::size_t i = 0, n = ring.size(), j = n - 1; i < n; j = i++) {
    const Vec2 a = ring[i];
    const Vec2 b = ring[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

void validate_polygon(const RoomPolygon& poly) {
  const std::string who = "room '" + poly.id + "': ";
  if (poly.id.empty()) throw InputError("room with empty id");
  if (poly.vertices.size() < 3) throw InputError(who + "polygon needs at least 3 vertices");
  for (const Vec2& v : poly.vertices) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw InputError(who + "non-finite vertex");
    }
  }
  for (std::size_t i = 0, n = poly.vertices.size(); i < n; ++i) {
    if (poly.vertices[i] == poly.vertices[(i + 1) % n]) {
      throw InputError(who + "repeated consecutive vertex");
    }
  }
  if (!(poly.confidence >= 0.0 && poly.confidence <= 1.0)) {
    throw InputError(who + "confidence outside [0,1]");
  }
  if (signed_area(poly.vertices) == 0.0) throw InputError(who + "polygon has zero area");
  if (self_intersects(poly.vertices)) throw InputError(who + "polygon is self-intersecting");
}

}  // namespace roomscope
