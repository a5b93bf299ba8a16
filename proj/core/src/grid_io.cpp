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

#include "roomscope/grid_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "binary_io.hpp"
#include "json.hpp"
#include "roomscope/error.hpp"

namespace roomscope {

using nlohmann::json;

void write_grid(const OccupancyGrid& grid, const std::filesystem::path& base) {
  const GridSpec& spec = grid.spec();
  std::filesystem::path header_path = base;
  header_path += ".json";
  std::filesystem::path data_path = base;
  data_path += ".bin";

  json header = {
      {"origin", {spec.origin_x, spec.origin_y}},
      {"cell_size", spec.cell_size},
      {"width", spec.width},
      {"height", spec.height},
      {"kind", std::string(to_string(grid.kind()))},
      {"data", data_path.filename().string()},
  };
  detail::write_file(header_path, header.dump(2) + "\n");

  std::ofstream out = detail::open_output(data_path, std::ios::out | std::ios::binary);
  for (double v : grid.cells()) detail::write_le(out, static_cast<float>(v));
  if (!out) throw Error("failed writing '" + data_path.string() + "'");
}

OccupancyGrid read_grid(const std::filesystem::path& header_path) {
  json header;
  try {
    header = json::parse(detail::read_file(header_path));
  } catch (const json::exception& e) {
    throw InputError("grid header '" + header_path.string() + "': " + e.what());
  }
  GridSpec spec;
  GridKind kind;
  std::filesystem::path data_path;
  try {
    spec.origin_x = header.at("origin").at(0).get<double>();
    spec.origin_y = header.at("origin").at(1).get<double>();
    spec.cell_size = header.at("cell_size").get<double>();
    spec.width = header.at("width").get<std::size_t>();
    spec.height = header.at("height").get<std::size_t>();
    kind = grid_kind_from_string(header.at("kind").get<std::string>());
    data_path = header_path.parent_path() / header.at("data").get<std::string>();
  } catch (const json::exception& e) {
    throw InputError("grid header '" + header_path.string() + "': " + e.what());
  }
  spec.validate();

  std::ifstream in = detail::open_input(data_path, std::ios::in | std::ios::binary);
  std::vector<double> cells(spec.cell_count());
  for (double& v : cells) v = detail::read_le<float>(in, "grid data");
  if (in.peek() != std::char_traits<char>::eof()) {
    throw InputError("grid data '" + data_path.string() + "' is longer than width*height");
  }
  OccupancyGrid grid(spec, kind, std::move(cells));
  grid.validate();
  return grid;
}

void write_pgm(const OccupancyGrid& grid, const std::filesystem::path& path) {
  const GridSpec& spec = grid.spec();
  std::ofstream out = detail::open_output(path, std::ios::out | std::ios::binary);
  out << "P5\n" << spec.width << ' ' << spec.height << "\n255\n";
  for (std::size_t r = spec.height; r-- > 0;) {
    for (std::size_t c = 0; c < spec.width; ++c) {
      const double v = std::clamp(grid.at(c, r), 0.0, 1.0);
      out.put(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
    }
  }
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace roomscope
