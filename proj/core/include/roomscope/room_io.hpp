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

#ifndef ROOMSCOPE_ROOM_IO_HPP_
#define ROOMSCOPE_ROOM_IO_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "roomscope/polygon.hpp"

namespace roomscope {

// {"rooms":[{"id":str,"confidence":float,"vertices":[[x,y],...],"label":str?}]}
std::vector<RoomPolygon> parse_room_polygons(const std::string& text);
std::string serialize_room_polygons(std::span<const RoomPolygon> rooms);

std::vector<RoomPolygon> import_room_polygons(const std::filesystem::path& path);
void export_room_polygons(std::span<const RoomPolygon> rooms,
                          const std::filesystem::path& path);

}  // namespace roomscope

#endif  // ROOMSCOPE_ROOM_IO_HPP_
