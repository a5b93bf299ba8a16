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

#ifndef ROOMSCOPE_SEGMENTATION_METRICS_HPP_
#define ROOMSCOPE_SEGMENTATION_METRICS_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roomscope/grid.hpp"
#include "roomscope/polygon.hpp"

namespace roomscope {

struct RoomMatch {
  std::string pred_id;
  std::string gt_id;
  double iou = 0.0;
  bool true_positive = false;
};

struct GtRoomIou {
  std::string gt_id;
  std::optional<std::string> pred_id;
  double iou = 0.0;
};

struct SegmentationReport {
  double ap50 = 0.0;
  double miou = 0.0;
  std::vector<RoomMatch> matching;    // in ranked prediction order
  std::vector<GtRoomIou> per_room;    // in ground-truth input order
};

inline constexpr double kApIouThreshold = 0.5;

// Predictions are ranked by descending confidence (ties: ascending id) and
// greedily matched one-to-one to the unmatched ground-truth room of highest
// positive IoU (ties: ascending gt id). A match is a true positive when its
// IoU >= 0.5. AP50 is the all-point interpolated area under the
// precision-recall curve of that ranking; mIoU averages, over ground-truth
// rooms, the IoU of each room's match (0 when unmatched). Masks are taken at
// `spec`; predictions that rasterize to nothing count as false positives.
SegmentationReport segmentation_metrics(std::span<const RoomPolygon> predictions,
                                        std::span<const RoomPolygon> ground_truth,
                                        const GridSpec& spec);

// All-point interpolated AP from a ranked list of TP/FP flags.
double interpolated_average_precision(const std::vector<bool>& ranked_tp,
                                      std::size_t n_positives);

}  // namespace roomscope

#endif  // ROOMSCOPE_SEGMENTATION_METRICS_HPP_
