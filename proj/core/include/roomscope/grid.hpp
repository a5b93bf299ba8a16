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

#ifndef ROOMSCOPE_GRID_HPP_
#define ROOMSCOPE_GRID_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "roomscope/point_cloud.hpp"

namespace roomscope {

// Placement of a 2D raster over the x-y plane. Cell (col, row) spans
// [origin_x + col*cell_size, origin_x + (col+1)*cell_size) and likewise in y.
struct GridSpec {
  double origin_x = 0.0;
  double origin_y = 0.0;
  double cell_size = 0.05;
  std::size_t width = 1;
  std::size_t height = 1;

  [[nodiscard]] std::size_t cell_count() const { return width * height; }
  [[nodiscard]] double max_x() const { return origin_x + cell_size * static_cast<double>(width); }
  [[nodiscard]] double max_y() const { return origin_y + cell_size * static_cast<double>(height); }
  [[nodiscard]] double center_x(std::size_t col) const {
    return origin_x + (static_cast<double>(col) + 0.5) * cell_size;
  }
  [[nodiscard]] double center_y(std::size_t row) const {
    return origin_y + (static_cast<double>(row) + 0.5) * cell_size;
  }

  // Throws Error when cell_size <= 0 or either dimension is zero.
  void validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Smallest grid anchored at the cloud's (x_min, y_min) that covers its x-y
// bounding box at the given resolution.
GridSpec grid_covering(std::span<const Point3> points, double cell_size);

struct CellIndex {
  std::size_t col = 0;
  std::size_t row = 0;
};

// floor((p - origin) / cell_size); points on the max edge clamp into the last
// cell. Throws Error("point outside grid") for anything else out of range.
CellIndex cell_of(const GridSpec& spec, double x, double y);

enum class GridKind { kBinarySlice, kBorder, kDensity, kCombined };

std::string_view to_string(GridKind kind);
GridKind grid_kind_from_string(std::string_view name);

class OccupancyGrid {
 public:
  OccupancyGrid(GridSpec spec, GridKind kind);
  OccupancyGrid(GridSpec spec, GridKind kind, std::vector<double> cells);

  [[nodiscard]] const GridSpec& spec() const { return spec_; }
  [[nodiscard]] GridKind kind() const { return kind_; }
  [[nodiscard]] std::span<const double> cells() const { return cells_; }
  [[nodiscard]] std::span<double> mutable_cells() { return cells_; }

  [[nodiscard]] double at(std::size_t col, std::size_t row) const {
    return cells_[row * spec_.width + col];
  }
  void set(std::size_t col, std::size_t row, double value) {
    cells_[row * spec_.width + col] = value;
  }

  // Number of cells with a nonzero value.
  [[nodiscard]] std::size_t occupied_count() const;

  // Checks the value-range invariant of the grid's kind.
  void validate() const;

  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

 private:
  GridSpec spec_;
  GridKind kind_;
  std::vector<double> cells_;
};

// Binary occupancy: a cell is 1 iff at least one point falls in it.
OccupancyGrid project_occupancy(std::span<const Point3> points,
                                const GridSpec& spec);

// Per-cell point counts. Used by project_density and the benchmarks.
std::vector<std::uint32_t> count_points(std::span<const Point3> points,
                                        const GridSpec& spec);

// Point counts normalized by the nearest-rank 99th percentile of the nonzero
// cell counts, clipped to 1. An empty input yields an all-zero grid.
OccupancyGrid project_density(std::span<const Point3> points,
                              const GridSpec& spec);

inline constexpr double kDensityPercentile = 0.99;

}  // namespace roomscope

#endif  // ROOMSCOPE_GRID_HPP_
