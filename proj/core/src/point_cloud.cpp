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

#include "roomscope/point_cloud.hpp"

#include <algorithm>
#include <cmath>

#include "roomscope/error.hpp"

namespace roomscope {

Bounds3 compute_bounds(std::span<const Point3> points) {
  if (points.empty()) throw InputError("empty point cloud");
  Bounds3 b{points.front(), points.front()};
  for (const Point3& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw InputError("point cloud contains non-finite coordinates");
    }
    b.min.x = std::min(b.min.x, p.x);
    b.min.y = std::min(b.min.y, p.y);
    b.min.z = std::min(b.min.z, p.z);
    b.max.x = std::max(b.max.x, p.x);
    b.max.y = std::max(b.max.y, p.y);
    b.max.z = std::max(b.max.z, p.z);
  }
  return b;
}

std::size_t slice_index(double z, const ZRange& range, std::size_t n_slices) {
  if (z < range.min || z > range.max) throw Error("point outside z range");
  const double extent = range.max - range.min;
  if (extent <= 0.0) return 0;
  // Scale before dividing so band edges that are exact multiples of the band
  // height land on the upper band.
  const double scaled = (z - range.min) * static_cast<double>(n_slices) / extent;
  const auto idx = static_cast<std::size_t>(std::floor(scaled));
  return std::min(idx, n_slices - 1);
}

std::vector<PointCloud> slice_point_cloud(const PointCloud& cloud,
                                          std::size_t n_slices,
                                          std::optional<ZRange> range) {
  if (cloud.empty()) throw InputError("empty point cloud");
  if (n_slices == 0) throw InputError("invalid slice count");
  ZRange r;
  if (range) {
    if (!(range->min <= range->max)) throw InputError("invalid z range");
    r = *range;
  } else {
    const Bounds3 b = compute_bounds(cloud.points);
    r = {b.min.z, b.max.z};
  }
  std::vector<PointCloud> slices(n_slices);
  for (const Point3& p : cloud.points) {
    slices[slice_index(p.z, r, n_slices)].points.push_back(p);
  }
  return slices;
}

}  // namespace roomscope
