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

#include "roomscope/classification_metrics.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "roomscope/error.hpp"

namespace roomscope {
namespace {

double step_average_precision(const std::vector<double>& scores, const std::vector<bool>& positive) {
  const std::size_t n_pos = static_cast<std::size_t>(std::count(positive.begin(), positive.end(), true));
  if (n_pos == 0) return 0.0;
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  double ap = 0.0;
  double prev_recall = 0.0;
  std::size_t tp = 0;
  std::size_t seen = 0;
  for (std::size_t i = 0; i < order.size();) {
    // Consume one block of tied scores.
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      tp += positive[order[j]] ? 1 : 0;
      ++j;
    }
    seen = j;
    const double recall = static_cast<double>(tp) / static_cast<double>(n_pos);
    const double precision = static_cast<double>(tp) / static_cast<double>(seen);
    ap += (recall - prev_recall) * precision;
    prev_recall = recall;
    i = j;
  }
  return ap;
}

}  // namespace

ClassificationReport classification_metrics(
    std::span<const std::string> predicted, std::span<const std::string> truth,
    std::span<const std::string> label_set,
    std::span<const std::map<std::string, double>> class_scores) {
  if (predicted.size() != truth.size()) {
    throw InputError("classification_metrics: predicted and truth lengths differ");
  }
  if (truth.empty()) throw InputError("classification_metrics: no samples");
  if (!class_scores.empty() && class_scores.size() != truth.size()) {
    throw InputError("classification_metrics: class score count differs from samples");
  }
  if (!label_set.empty()) {
    const std::set<std::string> allowed(label_set.begin(), label_set.end());
    for (std::size_t i = 0; i < truth.size(); ++i) {
      if (!allowed.count(truth[i]) || !allowed.count(predicted[i])) {
        throw InputError("classification_metrics: sample " + std::to_string(i) +
                         " uses a label outside the label set");
      }
    }
  }

  const std::set<std::string> classes(truth.begin(), truth.end());
  ClassificationReport report;
  double f1_weighted = 0.0;
  for (const std::string& c : classes) {
    ClassMetrics m;
    m.label = c;
    std::vector<double> scores(truth.size());
    std::vector<bool> positive(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) {
      const bool is_true = truth[i] == c;
      const bool is_pred = predicted[i] == c;
      m.support += is_true;
      m.true_positives += is_true && is_pred;
      m.false_positives += !is_true && is_pred;
      m.false_negatives += is_true && !is_pred;
      positive[i] = is_true;
      if (class_scores.empty()) {
        scores[i] = is_pred ? 1.0 : 0.0;
      } else {
        const auto it = class_scores[i].find(c);
        scores[i] = it == class_scores[i].end() ? 0.0 : it->second;
      }
    }
    const double tp = static_cast<double>(m.true_positives);
    if (m.true_positives + m.false_positives > 0) {
      m.precision = tp / static_cast<double>(m.true_positives + m.false_positives);
    }
    m.recall = tp / static_cast<double>(m.support);
    if (m.precision + m.recall > 0.0) {
      m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    }
    m.average_precision = step_average_precision(scores, positive);

    report.precision += m.precision;
    report.recall += m.recall;
    report.map += m.average_precision;
    f1_weighted += m.f1 * static_cast<double>(m.support);
    report.per_class.push_back(std::move(m));
  }
  const double n_classes = static_cast<double>(classes.size());
  report.precision /= n_classes;
  report.recall /= n_classes;
  report.map /= n_classes;
  report.f1_weighted = f1_weighted / static_cast<double>(truth.size());
  return report;
}

}  // namespace roomscope
