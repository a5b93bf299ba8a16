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

#ifndef ROOMSCOPE_GRID_IO_HPP_
#define ROOMSCOPE_GRID_IO_HPP_

#include <filesystem>

#include "roomscope/grid.hpp"

namespace roomscope {

// Writes `<base>.json` (origin, cell_size, width, height, kind, data) and
// `<base>.bin` (row-major little-endian float32 cells).
void write_grid(const OccupancyGrid& grid, const std::filesystem::path& base);

// Reads a grid from its JSON header; the binary sidecar is resolved relative
// to the header's directory.
OccupancyGrid read_grid(const std::filesystem::path& header_path);

// 8-bit binary PGM (P5). Values are clamped to [0,1] and scaled to 0..255;
// the top image row is the grid's highest-y row.
void write_pgm(const OccupancyGrid& grid, const std::filesystem::path& path);

}  // namespace roomscope

#endif  // ROOMSCOPE_GRID_IO_HPP_
