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

#include "roomscope/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "roomscope/error.hpp"

namespace roomscope {

void LabeledScoreRecord::validate(bool require_truth) const {
  dist.validate();
  if (require_truth && true_rooms.empty()) {
    throw InputError("instruction '" + dist.instruction_id + "' in scene '" + dist.scene_id +
                     "': no true rooms");
  }
  for (const std::string& r : true_rooms) {
    if (std::find(dist.room_ids.begin(), dist.room_ids.end(), r) == dist.room_ids.end()) {
      throw InputError("instruction '" + dist.instruction_id + "' in scene '" + dist.scene_id +
                       "': true room '" + r + "' absent from scores");
    }
  }
  if (std::set<std::string>(true_rooms.begin(), true_rooms.end()).size() != true_rooms.size()) {
    throw InputError("instruction '" + dist.instruction_id + "' in scene '" + dist.scene_id +
                     "': duplicate true room");
  }
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kAcp:
      return "acp";
    case Method::kCp:
      return "cp";
    case Method::kImported:
      return "imported";
  }
  return "unknown";
}

Method method_from_string(std::string_view name) {
  if (name == "acp") return Method::kAcp;
  if (name == "cp") return Method::kCp;
  if (name == "imported") return Method::kImported;
  throw InputError("unknown method '" + std::string(name) + "'");
}

RankPermutation rank_rooms(const ScoreDistribution& dist) {
  RankPermutation perm;
  perm.order.resize(dist.size());
  std::iota(perm.order.begin(), perm.order.end(), 0);
  std::sort(perm.order.begin(), perm.order.end(), [&](std::size_t a, std::size_t b) {
    if (dist.f[a] != dist.f[b]) return dist.f[a] > dist.f[b];
    return dist.room_ids[a] < dist.room_ids[b];
  });
  return perm;
}

std::vector<double> cumulative_scores(const ScoreDistribution& dist, const RankPermutation& perm) {
  std::vector<double> s(perm.order.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < perm.order.size(); ++k) {
    acc += dist.f[perm.order[k]];
    s[k] = acc;
  }
  return s;
}

double acp_conformity_score(const LabeledScoreRecord& record) {
  record.validate();
  const RankPermutation perm = rank_rooms(record.dist);
  std::vector<std::size_t> rank_of(perm.order.size());
  for (std::size_t k = 0; k < perm.order.size(); ++k) rank_of[perm.order[k]] = k;
  std::size_t last = 0;
  for (const std::string& r : record.true_rooms) {
    last = std::max(last, rank_of[record.dist.index_of(r)]);
  }
  const std::vector<double> s = cumulative_scores(record.dist, perm);
  return std::min(1.0, s[last]);
}

double cp_nonconformity_score(const LabeledScoreRecord& record) {
  record.validate();
  double best = 0.0;
  for (const std::string& r : record.true_rooms) {
    best = std::max(best, record.dist.f[record.dist.index_of(r)]);
  }
  return std::clamp(1.0 - best, 0.0, 1.0);
}

CalibrationSet build_calibration_set(std::span<const LabeledScoreRecord> records) {
  return build_calibration_set(records, Method::kAcp);
}

CalibrationSet build_cp_calibration_set(std::span<const LabeledScoreRecord> records) {
  return build_calibration_set(records, Method::kCp);
}

CalibrationSet build_calibration_set(std::span<const LabeledScoreRecord> records, Method method) {
  if (records.empty()) throw InputError("calibration needs at least one record");
  if (method == Method::kImported) throw InputError("cannot calibrate imported sets");
  CalibrationSet cal;
  cal.method = method;
  cal.scores.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      cal.scores.push_back(method == Method::kAcp ? acp_conformity_score(records[i])
                                                  : cp_nonconformity_score(records[i]));
    } catch (const InputError& e) {
      throw InputError("calibration record " + std::to_string(i) + ": " + e.what());
    }
  }
  return cal;
}

std::size_t conformal_rank(std::size_t n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
  const double level = static_cast<double>(n + 1) * (1.0 - alpha);
  return static_cast<std::size_t>(std::ceil(level - 1e-9));
}

double conformal_quantile(const CalibrationSet& cal, double alpha) {
  const std::size_t rank = conformal_rank(cal.n(), alpha);
  if (cal.n() == 0) throw InputError("empty calibration set");
  if (rank > cal.n()) return 1.0;
  std::vector<double> sorted = cal.scores;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1),
                   sorted.end());
  return sorted[rank - 1];
}

namespace {

PredictionSet make_set(const ScoreDistribution& dist, const RankPermutation& perm,
                       std::size_t k, double q_hat, double alpha, Method method) {
  PredictionSet set;
  set.instruction_id = dist.instruction_id;
  set.scene_id = dist.scene_id;
  set.k = k;
  set.q_hat = q_hat;
  set.alpha = alpha;
  set.method = method;
  set.source = std::string(to_string(method));
  set.rooms.reserve(k);
  for (std::size_t i = 0; i < k; ++i) set.rooms.push_back(dist.room_ids[perm.order[i]]);
  return set;
}

}  // namespace

PredictionSet acp_prediction_set(const ScoreDistribution& dist, double q_hat, double alpha) {
  if (dist.size() == 0) throw InputError("prediction set over zero rooms");
  const RankPermutation perm = rank_rooms(dist);
  const std::vector<double> s = cumulative_scores(dist, perm);
  std::size_t sup = 0;  // 1-based; 0 when no prefix qualifies
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] <= q_hat) sup = k + 1;
  }
  const std::size_t k = std::min(sup + 1, dist.size());
  return make_set(dist, perm, k, q_hat, alpha, Method::kAcp);
}

double cp_calibrate(std::span<const LabeledScoreRecord> records, double alpha) {
  return conformal_quantile(build_cp_calibration_set(records), alpha);
}

PredictionSet cp_prediction_set(const ScoreDistribution& dist, double q_hat_cp, double alpha) {
  if (dist.size() == 0) throw InputError("prediction set over zero rooms");
  const RankPermutation perm = rank_rooms(dist);
  // Rank order means the passing rooms form a prefix.
  std::size_t k = 0;
  for (std::size_t idx : perm.order) {
    if (1.0 - dist.f[idx] <= q_hat_cp) ++k;
  }
  return make_set(dist, perm, std::max<std::size_t>(k, 1), q_hat_cp, alpha, Method::kCp);
}

PredictionSet prediction_set(const ScoreDistribution& dist, const CalibrationSet& cal,
                             double alpha) {
  const double q_hat = conformal_quantile(cal, alpha);
  switch (cal.method) {
    case Method::kAcp:
      return acp_prediction_set(dist, q_hat, alpha);
    case Method::kCp:
      return cp_prediction_set(dist, q_hat, alpha);
    case Method::kImported:
      break;
  }
  throw InputError("imported calibration cannot build prediction sets");
}

double set_iou(std::span<const std::string> a, std::span<const std::string> b) {
  const std::set<std::string> sa(a.begin(), a.end());
  const std::set<std::string> sb(b.begin(), b.end());
  std::size_t inter = 0;
  for (const std::string& x : sa) inter += sb.count(x);
  const std::size_t uni = sa.size() + sb.size() - inter;
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

bool covers(const PredictionSet& set, std::span<const std::string> true_rooms) {
  return std::all_of(true_rooms.begin(), true_rooms.end(), [&](const std::string& r) {
    return std::find(set.rooms.begin(), set.rooms.end(), r) != set.rooms.end();
  });
}

double rm_iou(std::span<const PredictionSet> predicted,
              std::span<const std::vector<std::string>> true_sets) {
  if (predicted.size() != true_sets.size()) {
    throw InputError("rm_iou: " + std::to_string(predicted.size()) + " prediction sets for " +
                     std::to_string(true_sets.size()) + " truth sets");
  }
  if (predicted.empty()) throw InputError("rm_iou: no scenes");
  double sum = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    sum += set_iou(predicted[i].rooms, true_sets[i]);
  }
  return sum / static_cast<double>(predicted.size());
}

AlphaSearch optimize_alpha(std::span<const LabeledScoreRecord> validation,
                           const CalibrationSet& cal, std::span<const double> alpha_grid) {
  if (alpha_grid.empty()) throw InputError("optimize_alpha: empty alpha grid");
  if (validation.empty()) throw InputError("optimize_alpha: empty validation set");
  for (const LabeledScoreRecord& r : validation) r.validate();

  AlphaSearch search;
  search.table.reserve(alpha_grid.size());
  std::size_t best = 0;
  for (std::size_t g = 0; g < alpha_grid.size(); ++g) {
    AlphaEvaluation e;
    e.alpha = alpha_grid[g];
    e.q_hat = conformal_quantile(cal, e.alpha);
    double iou = 0.0, covered = 0.0, size = 0.0;
    for (const LabeledScoreRecord& r : validation) {
      const PredictionSet set = cal.method == Method::kCp
                                    ? cp_prediction_set(r.dist, e.q_hat, e.alpha)
                                    : acp_prediction_set(r.dist, e.q_hat, e.alpha);
      iou += set_iou(set.rooms, r.true_rooms);
      covered += covers(set, r.true_rooms) ? 1.0 : 0.0;
      size += static_cast<double>(set.rooms.size());
    }
    const auto n = static_cast<double>(validation.size());
    e.mean_iou = iou / n;
    e.coverage = covered / n;
    e.mean_set_size = size / n;
    search.table.push_back(e);

    const AlphaEvaluation& cur = search.table[best];
    if (e.mean_iou > cur.mean_iou || (e.mean_iou == cur.mean_iou && e.alpha < cur.alpha)) {
      best = g;
    }
  }
  search.alpha_star = search.table[best].alpha;
  return search;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  grid.reserve(99);
  for (int i = 1; i <= 99; ++i) grid.push_back(static_cast<double>(i) / 100.0);
  return grid;
}

}  // namespace roomscope
