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

#ifndef ROOMSCOPE_POINT_CLOUD_IO_HPP_
#define ROOMSCOPE_POINT_CLOUD_IO_HPP_

#include <filesystem>
#include <iosfwd>

#include "roomscope/point_cloud.hpp"

namespace roomscope {

enum class PlyFormat { kAscii, kBinaryLittleEndian };

// PLY reader for the `vertex` element's x/y/z properties. ASCII and binary
// little-endian bodies are supported; other elements and extra vertex
// properties (including list properties) are skipped.
PointCloud read_ply(std::istream& in);

// Whitespace-delimited "x y z [ignored...]" per line; '#' starts a comment.
PointCloud read_xyz(std::istream& in);

// Dispatches on the file extension: .ply, otherwise XYZ text.
PointCloud read_point_cloud(const std::filesystem::path& path);

void write_ply(const PointCloud& cloud, std::ostream& out, PlyFormat format);
void write_point_cloud(const PointCloud& cloud, const std::filesystem::path& path,
                       PlyFormat format = PlyFormat::kBinaryLittleEndian);

}  // namespace roomscope

#endif  // ROOMSCOPE_POINT_CLOUD_IO_HPP_
