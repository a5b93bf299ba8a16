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

#ifndef ROOMSCOPE_SNAPSHOT_HPP_
#define ROOMSCOPE_SNAPSHOT_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "roomscope/polygon.hpp"

namespace roomscope {

struct RoomBox {
  double center_x = 0.0;
  double center_y = 0.0;
  double length = 1.0;  // x extent
  double width = 1.0;   // y extent
  double z_c = 1.5;
};

struct CameraPose {
  std::array<double, 3> position{};
  std::array<double, 3> look_at{};
  std::size_t view_index = 0;
  double angle = 0.0;  // parameter angle on the ellipse, radians
};

inline constexpr std::size_t kDefaultViews = 8;
inline constexpr double kDefaultCameraHeight = 1.5;

// n_views cameras evenly spaced in parameter angle on the ellipse inscribed in
// the room box, all at height z_c and looking at the box center. Pose i sits
// at angle 2*pi*i/n_views, starting on the +x axis.
std::vector<CameraPose> plan_camera_poses(const RoomBox& box, std::size_t n_views);

// Axis-aligned bounding box of the polygon.
RoomBox room_box_from_polygon(const RoomPolygon& poly, double z_c);

// |4(x-xc)^2/L^2 + 4(y-yc)^2/W^2 - 1| for one pose.
double ellipse_residual(const RoomBox& box, const CameraPose& pose);

struct RoomPoses {
  std::string room_id;
  std::vector<CameraPose> poses;
};

// {"room_id":str,"poses":[{"position":[x,y,z],"look_at":[x,y,z],"view_index":int}]}
std::string serialize_room_poses(const RoomPoses& poses);
RoomPoses parse_room_poses(const std::string& text);

// A file of several rooms is a JSON array of the single-room documents.
void export_poses(std::span<const RoomPoses> rooms, const std::filesystem::path& path);
std::vector<RoomPoses> import_poses(const std::filesystem::path& path);

}  // namespace roomscope

#endif  // ROOMSCOPE_SNAPSHOT_HPP_
