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

#include "roomscope/segmenter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <string>
#include <utility>

#include "roomscope/error.hpp"

namespace roomscope {
namespace {

using Mask = std::vector<std::uint8_t>;

// 3x3 dilation treats out-of-grid cells as empty; the following erosion treats
// them as set, so the closing never removes wall cells on the grid edge.
Mask dilate(const Mask& in, std::size_t w, std::size_t h) {
  Mask out(in.size(), 0);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      if (!in[r * w + c]) continue;
      for (std::size_t rr = (r ? r - 1 : 0); rr <= std::min(r + 1, h - 1); ++rr) {
        for (std::size_t cc = (c ? c - 1 : 0); cc <= std::min(c + 1, w - 1); ++cc) {
          out[rr * w + cc] = 1;
        }
      }
    }
  }
  return out;
}

Mask erode(const Mask& in, std::size_t w, std::size_t h) {
  Mask out(in.size(), 0);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      bool keep = true;
      for (std::size_t rr = (r ? r - 1 : 0); keep && rr <= std::min(r + 1, h - 1); ++rr) {
        for (std::size_t cc = (c ? c - 1 : 0); cc <= std::min(c + 1, w - 1); ++cc) {
          if (!in[rr * w + cc]) {
            keep = false;
            break;
          }
        }
      }
      out[r * w + c] = keep ? 1 : 0;
    }
  }
  return out;
}

struct Lattice {
  std::int64_t x;
  std::int64_t y;
  auto operator<=>(const Lattice&) const = default;
};

// Outer boundary of a component as a counter-clockwise lattice ring. Boundary
// edges keep the component on their left; at pinch vertices the tracer takes
// the sharpest left turn so diagonal neighbours stay separated.
std::vector<Lattice> outer_ring(const std::vector<std::int32_t>& labels, std::int32_t label,
                                std::size_t w, std::size_t h) {
  auto inside = [&](std::int64_t c, std::int64_t r) {
    return c >= 0 && r >= 0 && c < static_cast<std::int64_t>(w) &&
           r < static_cast<std::int64_t>(h) &&
           labels[static_cast<std::size_t>(r) * w + static_cast<std::size_t>(c)] == label;
  };
  std::multimap<Lattice, Lattice> edges;
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(h); ++r) {
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(w); ++c) {
      if (!inside(c, r)) continue;
      if (!inside(c, r - 1)) edges.emplace(Lattice{c, r}, Lattice{c + 1, r});
      if (!inside(c + 1, r)) edges.emplace(Lattice{c + 1, r}, Lattice{c + 1, r + 1});
      if (!inside(c, r + 1)) edges.emplace(Lattice{c + 1, r + 1}, Lattice{c, r + 1});
      if (!inside(c - 1, r)) edges.emplace(Lattice{c, r + 1}, Lattice{c, r});
    }
  }

  auto turn_rank = [](Lattice d_in, Lattice d_out) {
    const std::int64_t z = d_in.x * d_out.y - d_in.y * d_out.x;
    if (z > 0) return 0;   // left
    if (z == 0) return 1;  // straight
    return 2;              // right
  };

  std::vector<Lattice> best;
  double best_area = 0.0;
  while (!edges.empty()) {
    auto it = edges.begin();
    const Lattice start = it->first;
    Lattice cur = it->second;
    Lattice dir{cur.x - start.x, cur.y - start.y};
    edges.erase(it);
    std::vector<Lattice> ring{start};
    while (!(cur == start)) {
      ring.push_back(cur);
      auto [lo, hi] = edges.equal_range(cur);
      if (lo == hi) break;  // unreachable for closed boundaries
      auto pick = lo;
      for (auto e = lo; e != hi; ++e) {
        const Lattice d{e->second.x - cur.x, e->second.y - cur.y};
        const Lattice dp{pick->second.x - cur.x, pick->second.y - cur.y};
        if (turn_rank(dir, d) < turn_rank(dir, dp)) pick = e;
      }
      const Lattice next = pick->second;
      dir = {next.x - cur.x, next.y - cur.y};
      edges.erase(pick);
      cur = next;
    }
    double twice = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const Lattice a = ring[i];
      const Lattice b = ring[(i + 1) % ring.size()];
      twice += static_cast<double>(a.x * b.y - b.x * a.y);
    }
    if (twice > best_area) {
      best_area = twice;
      best = std::move(ring);
    }
  }

  // Drop collinear vertices.
  std::vector<Lattice> simple;
  const std::size_t n = best.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Lattice a = best[(i + n - 1) % n];
    const Lattice v = best[i];
    const Lattice b = best[(i + 1) % n];
    if ((v.x - a.x) * (b.y - v.y) - (v.y - a.y) * (b.x - v.x) != 0) simple.push_back(v);
  }
  return simple;
}

}  // namespace

std::vector<RoomPolygon> segment_rooms_baseline(const OccupancyGrid& combined,
                                                const BaselineSegmenterParams& params) {
  if (combined.kind() != GridKind::kCombined) {
    throw Error("segment_rooms_baseline expects a combined map");
  }
  const GridSpec& spec = combined.spec();
  const std::size_t w = spec.width;
  const std::size_t h = spec.height;
  const std::size_t min_cells = params.min_room_cells.value_or(static_cast<std::size_t>(
      std::ceil(1.0 / (spec.cell_size * spec.cell_size))));

  Mask walls(spec.cell_count(), 0);
  const auto cells = combined.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    walls[i] = cells[i] >= params.wall_threshold ? 1 : 0;
  }
  walls = erode(dilate(walls, w, h), w, h);

  std::vector<std::int32_t> labels(spec.cell_count(), -1);
  struct Component {
    std::size_t size = 0;
    bool touches_edge = false;
  };
  std::vector<Component> components;
  std::queue<std::size_t> frontier;
  for (std::size_t seed = 0; seed < labels.size(); ++seed) {
    if (walls[seed] || labels[seed] >= 0) continue;
    const auto label = static_cast<std::int32_t>(components.size());
    components.emplace_back();
    Component& comp = components.back();
    labels[seed] = label;
    frontier.push(seed);
    while (!frontier.empty()) {
      const std::size_t i = frontier.front();
      frontier.pop();
      ++comp.size;
      const std::size_t r = i / w;
      const std::size_t c = i % w;
      if (r == 0 || c == 0 || r + 1 == h || c + 1 == w) comp.touches_edge = true;
      auto visit = [&](std::size_t j) {
        if (!walls[j] && labels[j] < 0) {
          labels[j] = label;
          frontier.push(j);
        }
      };
      if (c > 0) visit(i - 1);
      if (c + 1 < w) visit(i + 1);
      if (r > 0) visit(i - w);
      if (r + 1 < h) visit(i + w);
    }
  }

  std::vector<RoomPolygon> rooms;
  for (std::size_t k = 0; k < components.size(); ++k) {
    if (components[k].touches_edge || components[k].size < min_cells) continue;
    const auto ring = outer_ring(labels, static_cast<std::int32_t>(k), w, h);
    RoomPolygon poly;
    poly.id = "room_" + std::to_string(rooms.size());
    poly.confidence = 1.0;
    poly.vertices.reserve(ring.size());
    for (const Lattice& v : ring) {
      poly.vertices.push_back({spec.origin_x + static_cast<double>(v.x) * spec.cell_size,
                               spec.origin_y + static_cast<double>(v.y) * spec.cell_size});
    }
    rooms.push_back(std::move(poly));
  }
  return rooms;
}

}  // namespace roomscope
