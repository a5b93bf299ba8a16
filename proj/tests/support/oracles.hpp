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

// Independent reference implementations used to cross-check the library.
// They favour the most literal formulation over speed: fresh sums instead of
// running prefixes, integer arithmetic for rational thresholds, selection
// sort instead of std::sort.

#ifndef ROOMSCOPE_TESTS_ORACLES_HPP_
#define ROOMSCOPE_TESTS_ORACLES_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "roomscope/conformal.hpp"

namespace roomscope::oracle {

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
  [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

using Cells = std::vector<std::uint8_t>;

// Indices k with lo * S < S_k < hi * S, counting occupied cells one by one.
std::vector<std::size_t> select_slices(const std::vector<Cells>& slices, const Cells& full,
                                       Fraction lo, Fraction hi);

// 1 where a cell is occupied in at least frac * M of the selected slices.
Cells merge_border(const std::vector<Cells>& slices, const std::vector<std::size_t>& selected,
                   Fraction frac);

std::vector<double> combine(const std::vector<double>& density, const Cells& border, double gamma);

// The ceil(99n/100)-th smallest value, by integer arithmetic.
std::uint32_t nearest_rank_p99(std::vector<std::uint32_t> values);

// Room indices by descending f, equal f by ascending id (selection sort).
std::vector<std::size_t> rank(const ScoreDistribution& dist);

// (f[order[0]] + ... + f[order[k-1]]), summed from scratch.
double prefix_mass(const ScoreDistribution& dist, const std::vector<std::size_t>& order,
                   std::size_t k);

double acp_score(const LabeledScoreRecord& record);
double cp_score(const LabeledScoreRecord& record);

// Order statistic at rank ceil((n+1)(100 - alpha_pct)/100), or 1.0 past n.
double quantile_pct(const std::vector<double>& scores, int alpha_pct);

// Smallest rank prefix k such that the prefix of length k-1 is the longest
// one whose mass stays <= q (at least 1, at most n).
std::vector<std::string> acp_set(const ScoreDistribution& dist, double q);

// Every room with 1 - f <= q, rank ordered; top-1 if none.
std::vector<std::string> cp_set(const ScoreDistribution& dist, double q);

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b);

struct AlphaSweep {
  int best_pct = 0;
  std::vector<double> mean_iou;  // per grid entry
};

AlphaSweep optimize_alpha(const std::vector<LabeledScoreRecord>& validation,
                          const std::vector<double>& cal_scores, Method method,
                          const std::vector<int>& grid_pct);

// All-point interpolated AP: for each rank where recall grows, add the
// recall step times the best precision at that rank or later.
double interpolated_ap(const std::vector<bool>& ranked_tp, std::size_t n_positives);

}  // namespace roomscope::oracle

#endif  // ROOMSCOPE_TESTS_ORACLES_HPP_
