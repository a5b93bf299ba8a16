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

#include "roomscope/point_cloud_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "binary_io.hpp"
#include "roomscope/error.hpp"

namespace roomscope {
namespace {

enum class ScalarType { kI8, kU8, kI16, kU16, kI32, kU32, kF32, kF64 };

ScalarType parse_scalar_type(const std::string& name) {
  if (name == "char" || name == "int8") return ScalarType::kI8;
  if (name == "uchar" || name == "uint8") return ScalarType::kU8;
  if (name == "short" || name == "int16") return ScalarType::kI16;
  if (name == "ushort" || name == "uint16") return ScalarType::kU16;
  if (name == "int" || name == "int32") return ScalarType::kI32;
  if (name == "uint" || name == "uint32") return ScalarType::kU32;
  if (name == "float" || name == "float32") return ScalarType::kF32;
  if (name == "double" || name == "float64") return ScalarType::kF64;
  throw InputError("PLY: unknown property type '" + name + "'");
}

double read_binary_scalar(std::istream& in, ScalarType t) {
  switch (t) {
    case ScalarType::kI8:
      return detail::read_le<std::int8_t>(in, "PLY body");
    case ScalarType::kU8:
      return detail::read_le<std::uint8_t>(in, "PLY body");
    case ScalarType::kI16:
      return detail::read_le<std::int16_t>(in, "PLY body");
    case ScalarType::kU16:
      return detail::read_le<std::uint16_t>(in, "PLY body");
    case ScalarType::kI32:
      return detail::read_le<std::int32_t>(in, "PLY body");
    case ScalarType::kU32:
      return detail::read_le<std::uint32_t>(in, "PLY body");
    case ScalarType::kF32:
      return detail::read_le<float>(in, "PLY body");
    case ScalarType::kF64:
      return detail::read_le<double>(in, "PLY body");
  }
  return 0.0;
}

struct PlyProperty {
  std::string name;
  ScalarType type = ScalarType::kF32;
  std::optional<ScalarType> list_count_type;  // set for list properties
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> properties;
};

enum class BodyFormat { kAscii, kBinaryLe };

struct PlyHeader {
  BodyFormat format = BodyFormat::kAscii;
  std::vector<PlyElement> elements;
};

PlyHeader parse_header(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("ply", 0) != 0) {
    throw InputError("PLY: missing magic");
  }
  PlyHeader header;
  bool have_format = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string keyword;
    ls >> keyword;
    if (keyword.empty() || keyword == "comment" || keyword == "obj_info") continue;
    if (keyword == "end_header") {
      if (!have_format) throw InputError("PLY: missing format line");
      return header;
    }
    if (keyword == "format") {
      std::string fmt;
      ls >> fmt;
      if (fmt == "ascii") {
        header.format = BodyFormat::kAscii;
      } else if (fmt == "binary_little_endian") {
        header.format = BodyFormat::kBinaryLe;
      } else {
        throw InputError("PLY: unsupported format '" + fmt + "'");
      }
      have_format = true;
    } else if (keyword == "element") {
      PlyElement e;
      if (!(ls >> e.name >> e.count)) throw InputError("PLY: malformed element line");
      header.elements.push_back(std::move(e));
    } else if (keyword == "property") {
      if (header.elements.empty()) throw InputError("PLY: property before element");
      PlyProperty p;
      std::string type;
      ls >> type;
      if (type == "list") {
        std::string count_type, item_type;
        ls >> count_type >> item_type >> p.name;
        p.list_count_type = parse_scalar_type(count_type);
        p.type = parse_scalar_type(item_type);
      } else {
        p.type = parse_scalar_type(type);
        ls >> p.name;
      }
      if (p.name.empty()) throw InputError("PLY: property without a name");
      header.elements.back().properties.push_back(std::move(p));
    } else {
      throw InputError("PLY: unexpected header line '" + line + "'");
    }
  }
  throw InputError("PLY: missing end_header");
}

double next_ascii_value(std::istream& in) {
  double v;
  if (!(in >> v)) throw InputError("PLY: truncated or malformed ASCII body");
  return v;
}

}  // namespace

PointCloud read_ply(std::istream& in) {
  const PlyHeader header = parse_header(in);
  const bool binary = header.format == BodyFormat::kBinaryLe;
  auto read_value = [&](ScalarType t) {
    return binary ? read_binary_scalar(in, t) : next_ascii_value(in);
  };

  for (const PlyElement& element : header.elements) {
    const bool is_vertex = element.name == "vertex";
    int ix = -1, iy = -1, iz = -1;
    if (is_vertex) {
      for (std::size_t i = 0; i < element.properties.size(); ++i) {
        const auto& p = element.properties[i];
        if (p.list_count_type) continue;
        if (p.name == "x") ix = static_cast<int>(i);
        if (p.name == "y") iy = static_cast<int>(i);
        if (p.name == "z") iz = static_cast<int>(i);
      }
      if (ix < 0 || iy < 0 || iz < 0) throw InputError("PLY: vertex element lacks x/y/z");
    }

    PointCloud cloud;
    if (is_vertex) cloud.points.reserve(element.count);
    std::vector<double> row(element.properties.size());
    for (std::size_t r = 0; r < element.count; ++r) {
      for (std::size_t i = 0; i < element.properties.size(); ++i) {
        const PlyProperty& p = element.properties[i];
        if (p.list_count_type) {
          const double n = read_value(*p.list_count_type);
          if (n < 0) throw InputError("PLY: negative list length");
          for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) read_value(p.type);
          row[i] = 0.0;
        } else {
          row[i] = read_value(p.type);
        }
      }
      if (is_vertex) {
        cloud.points.push_back({row[static_cast<std::size_t>(ix)],
                                row[static_cast<std::size_t>(iy)],
                                row[static_cast<std::size_t>(iz)]});
      }
    }
    if (is_vertex) return cloud;
  }
  throw InputError("PLY: no vertex element");
}

PointCloud read_xyz(std::istream& in) {
  PointCloud cloud;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    std::istringstream ls(line);
    Point3 p;
    if (!(ls >> p.x >> p.y >> p.z)) {
      throw InputError("XYZ: malformed line " + std::to_string(line_no));
    }
    cloud.points.push_back(p);
  }
  return cloud;
}

PointCloud read_point_cloud(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".ply") {
    std::ifstream in = detail::open_input(path, std::ios::in | std::ios::binary);
    return read_ply(in);
  }
  std::ifstream in = detail::open_input(path);
  return read_xyz(in);
}

void write_ply(const PointCloud& cloud, std::ostream& out, PlyFormat format) {
  const bool binary = format == PlyFormat::kBinaryLittleEndian;
  out << "ply\n"
      << "format " << (binary ? "binary_little_endian" : "ascii") << " 1.0\n"
      << "element vertex " << cloud.points.size() << "\n"
      << "property float x\nproperty float y\nproperty float z\n"
      << "end_header\n";
  if (binary) {
    for (const Point3& p : cloud.points) {
      detail::write_le(out, static_cast<float>(p.x));
      detail::write_le(out, static_cast<float>(p.y));
      detail::write_le(out, static_cast<float>(p.z));
    }
  } else {
    out << std::setprecision(std::numeric_limits<float>::max_digits10);
    for (const Point3& p : cloud.points) {
      out << static_cast<float>(p.x) << ' ' << static_cast<float>(p.y) << ' '
          << static_cast<float>(p.z) << '\n';
    }
  }
}

void write_point_cloud(const PointCloud& cloud, const std::filesystem::path& path,
                       PlyFormat format) {
  std::ofstream out = detail::open_output(path, std::ios::out | std::ios::binary);
  write_ply(cloud, out, format);
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace roomscope
