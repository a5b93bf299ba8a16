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

#include "roomscope/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "roomscope/error.hpp"

namespace roomscope {

void GridSpec::validate() const {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw InputError("grid cell_size must be positive");
  }
  if (width == 0 || height == 0) throw InputError("grid must have at least one cell");
  if (!std::isfinite(origin_x) || !std::isfinite(origin_y)) {
    throw InputError("grid origin must be finite");
  }
}

GridSpec grid_covering(std::span<const Point3> points, double cell_size) {
  const Bounds3 b = compute_bounds(points);
  GridSpec spec;
  spec.origin_x = b.min.x;
  spec.origin_y = b.min.y;
  spec.cell_size = cell_size;
  spec.validate();
  auto cells_for = [cell_size](double extent) {
    const auto n = static_cast<std::size_t>(std::ceil(extent / cell_size));
    return std::max<std::size_t>(n, 1);
  };
  spec.width = cells_for(b.max.x - b.min.x);
  spec.height = cells_for(b.max.y - b.min.y);
  // ceil() can come out one short when the extent/cell ratio rounds down.
  while (spec.max_x() < b.max.x) ++spec.width;
  while (spec.max_y() < b.max.y) ++spec.height;
  return spec;
}

namespace {

std::size_t axis_index(double v, double origin, double cell, std::size_t n,
                       double max_edge) {
  if (!(v >= origin) || v > max_edge) throw Error("point outside grid");
  const auto idx = static_cast<std::size_t>(std::floor((v - origin) / cell));
  return std::min(idx, n - 1);
}

}  // namespace

CellIndex cell_of(const GridSpec& spec, double x, double y) {
  return {axis_index(x, spec.origin_x, spec.cell_size, spec.width, spec.max_x()),
          axis_index(y, spec.origin_y, spec.cell_size, spec.height, spec.max_y())};
}

std::string_view to_string(GridKind kind) {
  switch (kind) {
    case GridKind::kBinarySlice:
      return "binary_slice";
    case GridKind::kBorder:
      return "border";
    case GridKind::kDensity:
      return "density";
    case GridKind::kCombined:
      return "combined";
  }
  return "unknown";
}

GridKind grid_kind_from_string(std::string_view name) {
  if (name == "binary_slice") return GridKind::kBinarySlice;
  if (name == "border") return GridKind::kBorder;
  if (name == "density") return GridKind::kDensity;
  if (name == "combined") return GridKind::kCombined;
  throw InputError("unknown grid kind '" + std::string(name) + "'");
}

OccupancyGrid::OccupancyGrid(GridSpec spec, GridKind kind)
    : spec_(spec), kind_(kind) {
  spec_.validate();
  cells_.assign(spec_.cell_count(), 0.0);
}

OccupancyGrid::OccupancyGrid(GridSpec spec, GridKind kind, std::vector<double> cells)
    : spec_(spec), kind_(kind), cells_(std::move(cells)) {
  spec_.validate();
  if (cells_.size() != spec_.cell_count()) {
    throw InputError("grid cell count does not match width*height");
  }
}

std::size_t OccupancyGrid::occupied_count() const {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [](double v) { return v != 0.0; }));
}

void OccupancyGrid::validate() const {
  const bool binary = kind_ == GridKind::kBinarySlice || kind_ == GridKind::kBorder;
  for (double v : cells_) {
    if (binary ? (v != 0.0 && v != 1.0) : !(v >= 0.0 && v <= 1.0)) {
      throw InputError("grid of kind " + std::string(to_string(kind_)) +
                       " has out-of-range cell value");
    }
  }
}

OccupancyGrid project_occupancy(std::span<const Point3> points, const GridSpec& spec) {
  OccupancyGrid grid(spec, GridKind::kBinarySlice);
  for (const Point3& p : points) {
    const CellIndex c = cell_of(spec, p.x, p.y);
    grid.set(c.col, c.row, 1.0);
  }
  return grid;
}

std::vector<std::uint32_t> count_points(std::span<const Point3> points,
                                        const GridSpec& spec) {
  spec.validate();
  std::vector<std::uint32_t> counts(spec.cell_count(), 0);
  for (const Point3& p : points) {
    const CellIndex c = cell_of(spec, p.x, p.y);
    ++counts[c.row * spec.width + c.col];
  }
  return counts;
}

OccupancyGrid project_density(std::span<const Point3> points, const GridSpec& spec) {
  const std::vector<std::uint32_t> counts = count_points(points, spec);
  std::vector<std::uint32_t> nonzero;
  nonzero.reserve(counts.size());
  for (std::uint32_t c : counts) {
    if (c > 0) nonzero.push_back(c);
  }
  OccupancyGrid grid(spec, GridKind::kDensity);
  if (nonzero.empty()) return grid;

  // Nearest-rank percentile: the ceil(p*n)-th smallest value. The guard keeps
  // p*n from landing one rank high when it is an integer in exact arithmetic.
  auto rank = static_cast<std::size_t>(
      std::ceil(kDensityPercentile * static_cast<double>(nonzero.size()) - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, nonzero.size());
  std::nth_element(nonzero.begin(), nonzero.begin() + static_cast<std::ptrdiff_t>(rank - 1),
                   nonzero.end());
  const double scale = static_cast<double>(nonzero[rank - 1]);

  auto out = grid.mutable_cells();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out[i] = std::min(1.0, static_cast<double>(counts[i]) / scale);
  }
  return grid;
}

}  // namespace roomscope
