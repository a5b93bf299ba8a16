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

#include "roomscope/segmentation_metrics.hpp"

#include <algorithm>
#include <numeric>

#include "roomscope/error.hpp"
#include "roomscope/room_mask.hpp"

namespace roomscope {

double interpolated_average_precision(const std::vector<bool>& ranked_tp,
                                      std::size_t n_positives) {
  if (n_positives == 0) throw Error("average precision needs at least one positive");
  const std::size_t n = ranked_tp.size();
  std::vector<double> precision(n), recall(n);
  std::size_t tp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    tp += ranked_tp[i] ? 1 : 0;
    precision[i] = static_cast<double>(tp) / static_cast<double>(i + 1);
    recall[i] = static_cast<double>(tp) / static_cast<double>(n_positives);
  }
  // Interpolate: precision at rank i becomes the max precision at any rank >= i.
  for (std::size_t i = n; i-- > 1;) precision[i - 1] = std::max(precision[i - 1], precision[i]);
  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (recall[i] > prev_recall) {
      ap += (recall[i] - prev_recall) * precision[i];
      prev_recall = recall[i];
    }
  }
  return ap;
}

SegmentationReport segmentation_metrics(std::span<const RoomPolygon> predictions,
                                        std::span<const RoomPolygon> ground_truth,
                                        const GridSpec& spec) {
  if (ground_truth.empty()) throw Error("segmentation_metrics: empty ground truth");

  std::vector<RoomMask> gt_masks;
  gt_masks.reserve(ground_truth.size());
  for (const RoomPolygon& g : ground_truth) gt_masks.push_back(rasterize_polygon(g, spec));

  std::vector<std::size_t> gt_order(ground_truth.size());
  std::iota(gt_order.begin(), gt_order.end(), 0);
  std::sort(gt_order.begin(), gt_order.end(), [&](std::size_t a, std::size_t b) {
    return ground_truth[a].id < ground_truth[b].id;
  });

  std::vector<std::size_t> pred_order(predictions.size());
  std::iota(pred_order.begin(), pred_order.end(), 0);
  std::sort(pred_order.begin(), pred_order.end(), [&](std::size_t a, std::size_t b) {
    if (predictions[a].confidence != predictions[b].confidence) {
      return predictions[a].confidence > predictions[b].confidence;
    }
    return predictions[a].id < predictions[b].id;
  });

  SegmentationReport report;
  report.per_room.resize(ground_truth.size());
  for (std::size_t g = 0; g < ground_truth.size(); ++g) report.per_room[g].gt_id = ground_truth[g].id;

  std::vector<bool> gt_taken(ground_truth.size(), false);
  std::vector<bool> ranked_tp;
  ranked_tp.reserve(predictions.size());
  for (std::size_t p : pred_order) {
    const RoomPolygon& pred = predictions[p];
    RoomMatch match{pred.id, "", 0.0, false};
    std::optional<RoomMask> mask;
    try {
      mask = rasterize_polygon(pred, spec);
    } catch (const Error&) {
      // Nothing inside the evaluation grid: an unmatched false positive.
    }
    if (mask) {
      std::optional<std::size_t> best;
      double best_iou = 0.0;
      for (std::size_t g : gt_order) {
        if (gt_taken[g]) continue;
        const double iou = mask_iou(*mask, gt_masks[g]);
        if (iou > best_iou) {
          best_iou = iou;
          best = g;
        }
      }
      if (best) {
        gt_taken[*best] = true;
        match.gt_id = ground_truth[*best].id;
        match.iou = best_iou;
        match.true_positive = best_iou >= kApIouThreshold;
        report.per_room[*best].pred_id = pred.id;
        report.per_room[*best].iou = best_iou;
      }
    }
    ranked_tp.push_back(match.true_positive);
    report.matching.push_back(std::move(match));
  }

  report.ap50 = interpolated_average_precision(ranked_tp, ground_truth.size());
  double sum = 0.0;
  for (const GtRoomIou& r : report.per_room) sum += r.iou;
  report.miou = sum / static_cast<double>(ground_truth.size());
  return report;
}

}  // namespace roomscope
