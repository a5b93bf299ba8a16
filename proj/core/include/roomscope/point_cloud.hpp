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

#ifndef ROOMSCOPE_POINT_CLOUD_HPP_
#define ROOMSCOPE_POINT_CLOUD_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace roomscope {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

struct PointCloud {
  std::vector<Point3> points;

  [[nodiscard]] bool empty() const { return points.empty(); }
  [[nodiscard]] std::size_t size() const { return points.size(); }
};

struct Bounds3 {
  Point3 min;
  Point3 max;
};

// Throws InputError("empty point cloud") for an empty cloud and Error for
// non-finite coordinates.
Bounds3 compute_bounds(std::span<const Point3> points);

struct ZRange {
  double min = 0.0;
  double max = 0.0;
};

// Partitions the cloud into `n_slices` equal-height z-bands over `range`
// (the cloud's own z extent when omitted). Bands are half-open [lo, hi)
// except the topmost, which is closed. Points outside an explicit range are
// rejected. A zero-height range places every point in slice 0.
std::vector<PointCloud> slice_point_cloud(const PointCloud& cloud,
                                          std::size_t n_slices,
                                          std::optional<ZRange> range = {});

// Index of the band containing z; exposed for tests and tooling.
std::size_t slice_index(double z, const ZRange& range, std::size_t n_slices);

}  // namespace roomscope

#endif  // ROOMSCOPE_POINT_CLOUD_HPP_
