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

#include "roomscope/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "binary_io.hpp"
#include "json.hpp"
#include "roomscope/error.hpp"

namespace roomscope {

using nlohmann::json;

std::vector<CameraPose> plan_camera_poses(const RoomBox& box, std::size_t n_views) {
  if (n_views == 0) throw InputError("n_views must be at least 1");
  if (!(box.length > 0.0) || !(box.width > 0.0)) {
    throw InputError("room box needs positive length and width");
  }
  const double half_l = 0.5 * box.length;
  const double half_w = 0.5 * box.width;
  std::vector<CameraPose> poses;
  poses.reserve(n_views);
  for (std::size_t i = 0; i < n_views; ++i) {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_views);
    CameraPose pose;
    pose.view_index = i;
    pose.angle = theta;
    pose.position = {box.center_x + half_l * std::cos(theta),
                     box.center_y + half_w * std::sin(theta), box.z_c};
    pose.look_at = {box.center_x, box.center_y, box.z_c};
    poses.push_back(pose);
  }
  return poses;
}

RoomBox room_box_from_polygon(const RoomPolygon& poly, double z_c) {
  if (poly.vertices.empty()) throw InputError("room '" + poly.id + "': no vertices");
  double min_x = poly.vertices.front().x, max_x = min_x;
  double min_y = poly.vertices.front().y, max_y = min_y;
  for (const Vec2& v : poly.vertices) {
    min_x = std::min(min_x, v.x);
    max_x = std::max(max_x, v.x);
    min_y = std::min(min_y, v.y);
    max_y = std::max(max_y, v.y);
  }
  if (!(max_x > min_x) || !(max_y > min_y)) {
    throw InputError("room '" + poly.id + "': degenerate bounding box");
  }
  return {0.5 * (min_x + max_x), 0.5 * (min_y + max_y), max_x - min_x, max_y - min_y, z_c};
}

double ellipse_residual(const RoomBox& box, const CameraPose& pose) {
  const double dx = pose.position[0] - box.center_x;
  const double dy = pose.position[1] - box.center_y;
  return std::abs(4.0 * dx * dx / (box.length * box.length) +
                  4.0 * dy * dy / (box.width * box.width) - 1.0);
}

namespace {

json poses_to_json(const RoomPoses& rp) {
  json arr = json::array();
  for (const CameraPose& p : rp.poses) {
    arr.push_back({{"position", p.position},
                   {"look_at", p.look_at},
                   {"view_index", p.view_index}});
  }
  return {{"room_id", rp.room_id}, {"poses", std::move(arr)}};
}

RoomPoses poses_from_json(const json& doc) {
  RoomPoses rp;
  try {
    rp.room_id = doc.at("room_id").get<std::string>();
    for (const json& p : doc.at("poses")) {
      CameraPose pose;
      pose.position = p.at("position").get<std::array<double, 3>>();
      pose.look_at = p.at("look_at").get<std::array<double, 3>>();
      pose.view_index = p.at("view_index").get<std::size_t>();
      pose.angle = std::atan2(pose.position[1] - pose.look_at[1],
                              pose.position[0] - pose.look_at[0]);
      rp.poses.push_back(pose);
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("pose document: ") + e.what());
  }
  return rp;
}

}  // namespace

std::string serialize_room_poses(const RoomPoses& poses) {
  return poses_to_json(poses).dump(2) + "\n";
}

RoomPoses parse_room_poses(const std::string& text) {
  try {
    return poses_from_json(json::parse(text));
  } catch (const json::parse_error& e) {
    throw InputError(std::string("pose document: ") + e.what());
  }
}

void export_poses(std::span<const RoomPoses> rooms, const std::filesystem::path& path) {
  json arr = json::array();
  for (const RoomPoses& r : rooms) arr.push_back(poses_to_json(r));
  detail::write_file(path, arr.dump(2) + "\n");
}

std::vector<RoomPoses> import_poses(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(detail::read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError("poses '" + path.string() + "': " + e.what());
  }
  std::vector<RoomPoses> out;
  if (doc.is_array()) {
    for (const json& d : doc) out.push_back(poses_from_json(d));
  } else {
    out.push_back(poses_from_json(doc));
  }
  return out;
}

}  // namespace roomscope
