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

#include "oracles.hpp"

#include <algorithm>

namespace roomscope::oracle {

std::vector<std::size_t> select_slices(const std::vector<Cells>& slices, const Cells& full,
                                       Fraction lo, Fraction hi) {
  std::int64_t s = 0;
  for (std::uint8_t c : full) s += c ? 1 : 0;
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < slices.size(); ++k) {
    std::int64_t sk = 0;
    for (std::uint8_t c : slices[k]) sk += c ? 1 : 0;
    // lo.num/lo.den * s < sk  <=>  lo.num * s < sk * lo.den
    if (lo.num * s < sk * lo.den && sk * hi.den < hi.num * s) out.push_back(k);
  }
  return out;
}

Cells merge_border(const std::vector<Cells>& slices, const std::vector<std::size_t>& selected,
                   Fraction frac) {
  const std::size_t n = slices.front().size();
  const auto m = static_cast<std::int64_t>(selected.size());
  Cells out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t votes = 0;
    for (std::size_t k : selected) votes += slices[k][i] ? 1 : 0;
    out[i] = votes * frac.den >= frac.num * m ? 1 : 0;
  }
  return out;
}

std::vector<double> combine(const std::vector<double>& density, const Cells& border, double gamma) {
  std::vector<double> out(density.size());
  for (std::size_t i = 0; i < density.size(); ++i) {
    out[i] = gamma * density[i] + (1.0 - gamma) * (border[i] ? 1.0 : 0.0);
  }
  return out;
}

std::uint32_t nearest_rank_p99(std::vector<std::uint32_t> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  std::size_t r = (99 * n + 99) / 100;
  if (r < 1) r = 1;
  return values[r - 1];
}

std::vector<std::size_t> rank(const ScoreDistribution& dist) {
  const std::size_t n = dist.size();
  std::vector<bool> used(n, false);
  std::vector<std::size_t> order;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      if (best == n || dist.f[j] > dist.f[best] ||
          (dist.f[j] == dist.f[best] && dist.room_ids[j] < dist.room_ids[best])) {
        best = j;
      }
    }
    used[best] = true;
    order.push_back(best);
  }
  return order;
}

double prefix_mass(const ScoreDistribution& dist, const std::vector<std::size_t>& order,
                   std::size_t k) {
  double s = 0.0;
  for (std::size_t j = 0; j < k; ++j) s += dist.f[order[j]];
  return s;
}

double acp_score(const LabeledScoreRecord& r) {
  const std::vector<std::size_t> order = rank(r.dist);
  // Grow the prefix until it holds every true room.
  for (std::size_t k = 1; k <= order.size(); ++k) {
    bool all = true;
    for (const std::string& t : r.true_rooms) {
      bool found = false;
      for (std::size_t j = 0; j < k; ++j) found = found || r.dist.room_ids[order[j]] == t;
      all = all && found;
    }
    if (all) return std::min(1.0, prefix_mass(r.dist, order, k));
  }
  return 1.0;
}

double cp_score(const LabeledScoreRecord& r) {
  double best = 0.0;
  for (const std::string& t : r.true_rooms) {
    for (std::size_t j = 0; j < r.dist.size(); ++j) {
      if (r.dist.room_ids[j] == t) best = std::max(best, r.dist.f[j]);
    }
  }
  return std::clamp(1.0 - best, 0.0, 1.0);
}

double quantile_pct(const std::vector<double>& scores, int alpha_pct) {
  const auto n = static_cast<std::int64_t>(scores.size());
  const std::int64_t num = (n + 1) * (100 - alpha_pct);
  const std::int64_t r = (num + 99) / 100;
  if (r > n) return 1.0;
  std::vector<double> sorted = scores;
  std::sort(sorted.begin(), sorted.end());
  return sorted[static_cast<std::size_t>(r - 1)];
}

std::vector<std::string> acp_set(const ScoreDistribution& dist, double q) {
  const std::vector<std::size_t> order = rank(dist);
  const std::size_t n = order.size();
  std::size_t k = 1;
  for (std::size_t kp = 1; kp <= n; ++kp) {
    if (prefix_mass(dist, order, kp) <= q) k = std::max(k, kp + 1);
  }
  k = std::min(k, n);
  std::vector<std::string> out;
  for (std::size_t j = 0; j < k; ++j) out.push_back(dist.room_ids[order[j]]);
  return out;
}

std::vector<std::string> cp_set(const ScoreDistribution& dist, double q) {
  const std::vector<std::size_t> order = rank(dist);
  std::vector<std::string> out;
  for (std::size_t idx : order) {
    if (1.0 - dist.f[idx] <= q) out.push_back(dist.room_ids[idx]);
  }
  if (out.empty()) out.push_back(dist.room_ids[order.front()]);
  return out;
}

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::size_t inter = 0;
  for (const std::string& x : a) inter += std::count(b.begin(), b.end(), x) > 0 ? 1 : 0;
  const std::size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

AlphaSweep optimize_alpha(const std::vector<LabeledScoreRecord>& validation,
                          const std::vector<double>& cal_scores, Method method,
                          const std::vector<int>& grid_pct) {
  AlphaSweep sweep;
  double best = -1.0;
  for (int pct : grid_pct) {
    const double q = quantile_pct(cal_scores, pct);
    double sum = 0.0;
    for (const LabeledScoreRecord& r : validation) {
      const auto set = method == Method::kAcp ? acp_set(r.dist, q) : cp_set(r.dist, q);
      sum += jaccard(set, r.true_rooms);
    }
    const double mean = sum / static_cast<double>(validation.size());
    sweep.mean_iou.push_back(mean);
    if (mean > best || (mean == best && pct < sweep.best_pct)) {
      best = mean;
      sweep.best_pct = pct;
    }
  }
  return sweep;
}

double interpolated_ap(const std::vector<bool>& ranked_tp, std::size_t n_positives) {
  double ap = 0.0;
  std::size_t tp_before = 0;
  for (std::size_t i = 0; i < ranked_tp.size(); ++i) {
    if (!ranked_tp[i]) continue;
    // Recall grows by 1/n_positives at rank i; use the best precision at or after i.
    double best_precision = 0.0;
    std::size_t tp = tp_before;
    for (std::size_t j = i; j < ranked_tp.size(); ++j) {
      tp += ranked_tp[j] ? 1 : 0;
      best_precision =
          std::max(best_precision, static_cast<double>(tp) / static_cast<double>(j + 1));
    }
    ap += best_precision / static_cast<double>(n_positives);
    ++tp_before;
  }
  return ap;
}

}  // namespace roomscope::oracle
