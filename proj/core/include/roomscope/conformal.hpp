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

#ifndef ROOMSCOPE_CONFORMAL_HPP_
#define ROOMSCOPE_CONFORMAL_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "roomscope/room_scores.hpp"

namespace roomscope {

// One labeled instruction-scene pair.
struct LabeledScoreRecord {
  ScoreDistribution dist;
  std::vector<std::string> true_rooms;  // subset of dist.room_ids
  std::string instruction;              // free text, optional
  std::vector<std::string> gt_room_types;  // reporting only

  void validate(bool require_truth = true) const;
};

// Room indices of a distribution from most to least likely; equal scores are
// ordered by ascending room id.
struct RankPermutation {
  std::vector<std::size_t> order;
};

enum class Method { kAcp, kCp, kImported };
std::string_view to_string(Method m);
Method method_from_string(std::string_view name);

struct CalibrationSet {
  std::vector<double> scores;  // each in [0,1]
  Method method = Method::kAcp;

  [[nodiscard]] std::size_t n() const { return scores.size(); }
};

struct PredictionSet {
  std::string instruction_id;
  std::string scene_id;
  std::vector<std::string> rooms;  // rank order for acp/cp
  std::size_t k = 0;               // number of selected rooms
  double q_hat = 0.0;
  double alpha = 0.0;
  Method method = Method::kAcp;
  std::string source;  // method name as written in files

  friend bool operator==(const PredictionSet&, const PredictionSet&) = default;
};

inline constexpr double kDefaultAlpha = 0.3;

RankPermutation rank_rooms(const ScoreDistribution& dist);

// s_k = sum of the k largest scores, k = 1..n.
std::vector<double> cumulative_scores(const ScoreDistribution& dist, const RankPermutation& perm);

// Cumulative score at the smallest rank whose prefix holds every true room.
double acp_conformity_score(const LabeledScoreRecord& record);

// 1 - f of the highest-scoring true room.
double cp_nonconformity_score(const LabeledScoreRecord& record);

CalibrationSet build_calibration_set(std::span<const LabeledScoreRecord> records);
CalibrationSet build_cp_calibration_set(std::span<const LabeledScoreRecord> records);
CalibrationSet build_calibration_set(std::span<const LabeledScoreRecord> records, Method method);

// ceil((n+1)(1-alpha)), evaluated with a 1e-9 guard against representation
// error in alpha (0.3 is not exact in binary).
std::size_t conformal_rank(std::size_t n, double alpha);

// The conformal_rank-th smallest calibration score, or 1.0 when that rank
// exceeds n. Requires 0 < alpha < 1.
double conformal_quantile(const CalibrationSet& cal, double alpha);

// Top-k rooms with k = max{k' : s_k' <= q_hat} + 1, taking the max of an
// empty set as 0 and clamping k to n.
PredictionSet acp_prediction_set(const ScoreDistribution& dist, double q_hat, double alpha);

// q_hat of the CP baseline over 1 - f(true) scores.
double cp_calibrate(std::span<const LabeledScoreRecord> records, double alpha);

// Rooms with 1 - f <= q_hat_cp, in rank order; the top-1 room when none pass.
PredictionSet cp_prediction_set(const ScoreDistribution& dist, double q_hat_cp, double alpha);

// Dispatches on cal.method (acp or cp).
PredictionSet prediction_set(const ScoreDistribution& dist, const CalibrationSet& cal,
                             double alpha);

// |a ∩ b| / |a ∪ b| over room ids.
double set_iou(std::span<const std::string> a, std::span<const std::string> b);

// True when every true room is selected.
bool covers(const PredictionSet& set, std::span<const std::string> true_rooms);

double rm_iou(std::span<const PredictionSet> predicted,
              std::span<const std::vector<std::string>> true_sets);

struct AlphaEvaluation {
  double alpha = 0.0;
  double q_hat = 0.0;
  double mean_iou = 0.0;
  double coverage = 0.0;
  double mean_set_size = 0.0;
};

struct AlphaSearch {
  double alpha_star = 0.0;
  std::vector<AlphaEvaluation> table;  // grid order
};

// Evaluates every alpha of the grid on the validation records with sets built
// from `cal` and returns the alpha of highest mean IoU (ties: smallest alpha).
AlphaSearch optimize_alpha(std::span<const LabeledScoreRecord> validation,
                           const CalibrationSet& cal, std::span<const double> alpha_grid);

// 0.01, 0.02, ..., 0.99
std::vector<double> default_alpha_grid();

}  // namespace roomscope

#endif  // ROOMSCOPE_CONFORMAL_HPP_
