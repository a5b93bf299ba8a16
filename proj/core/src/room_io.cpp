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

#include "roomscope/room_io.hpp"

#include <set>

#include "binary_io.hpp"
#include "json.hpp"
#include "roomscope/error.hpp"

namespace roomscope {

using nlohmann::json;

std::vector<RoomPolygon> parse_room_polygons(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("room polygons: malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rooms") || !doc["rooms"].is_array()) {
    throw InputError("room polygons: expected an object with a \"rooms\" array");
  }
  std::vector<RoomPolygon> rooms;
  std::set<std::string> seen;
  std::size_t index = 0;
  for (const json& r : doc["rooms"]) {
    RoomPolygon poly;
    try {
      poly.id = r.at("id").get<std::string>();
      poly.confidence = r.contains("confidence") ? r["confidence"].get<double>() : 1.0;
      for (const json& v : r.at("vertices")) {
        if (!v.is_array() || v.size() != 2) {
          throw InputError("room '" + poly.id + "': vertex must be [x, y]");
        }
        poly.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
      }
      if (r.contains("label") && !r["label"].is_null()) poly.label = r["label"].get<std::string>();
    } catch (const json::exception& e) {
      const std::string who = poly.id.empty() ? "#" + std::to_string(index) : "'" + poly.id + "'";
      throw InputError("room " + who + ": " + e.what());
    }
    validate_polygon(poly);
    if (!seen.insert(poly.id).second) throw InputError("room '" + poly.id + "': duplicate id");
    rooms.push_back(std::move(poly));
    ++index;
  }
  return rooms;
}

std::string serialize_room_polygons(std::span<const RoomPolygon> rooms) {
  json arr = json::array();
  for (const RoomPolygon& r : rooms) {
    json verts = json::array();
    for (const Vec2& v : r.vertices) verts.push_back({v.x, v.y});
    json entry = {{"id", r.id}, {"confidence", r.confidence}, {"vertices", std::move(verts)}};
    if (r.label) entry["label"] = *r.label;
    arr.push_back(std::move(entry));
  }
  return json{{"rooms", std::move(arr)}}.dump(2) + "\n";
}

std::vector<RoomPolygon> import_room_polygons(const std::filesystem::path& path) {
  return parse_room_polygons(detail::read_file(path));
}

void export_room_polygons(std::span<const RoomPolygon> rooms, const std::filesystem::path& path) {
  detail::write_file(path, serialize_room_polygons(rooms));
}

}  // namespace roomscope
