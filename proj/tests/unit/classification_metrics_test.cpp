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

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "roomscope/classification_metrics.hpp"
#include "roomscope/error.hpp"

namespace roomscope {
namespace {

struct ConfusionOracle {
  double macro_p = 0, macro_r = 0, weighted_f1 = 0;
};

ConfusionOracle confusion(const std::vector<std::string>& pred,
                          const std::vector<std::string>& truth) {
  std::map<std::string, std::map<std::string, int>> m;  // truth -> pred -> count
  std::set<std::string> classes(truth.begin(), truth.end());
  for (std::size_t i = 0; i < truth.size(); ++i) ++m[truth[i]][pred[i]];
  ConfusionOracle o;
  for (const auto& c : classes) {
    int tp = m[c][c], col = 0, row = 0;
    for (const auto& [t, preds] : m) {
      for (const auto& [p, n] : preds) {
        if (p == c) col += n;
        if (t == c) row += n;
      }
    }
    const double p = col ? static_cast<double>(tp) / col : 0.0;
    const double r = static_cast<double>(tp) / row;
    o.macro_p += p / classes.size();
    o.macro_r += r / classes.size();
    o.weighted_f1 += (p + r > 0 ? 2 * p * r / (p + r) : 0.0) * row / truth.size();
  }
  return o;
}

TEST(ClassificationMetrics, PerfectAndAllWrong) {
  const std::vector<std::string> t = {"a", "b", "a"};
  const ClassificationReport r = classification_metrics(t, t, {});
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_EQ(r.recall, 1.0);
  EXPECT_EQ(r.f1_weighted, 1.0);
  EXPECT_EQ(r.map, 1.0);
  const std::vector<std::string> w = {"b", "a", "b"};
  const ClassificationReport z = classification_metrics(w, t, {});
  EXPECT_EQ(z.precision, 0.0);
  EXPECT_EQ(z.recall, 0.0);
}

TEST(ClassificationMetrics, OneErrorTwoClasses) {
  const std::vector<std::string> truth = {"a", "a", "b"};
  const std::vector<std::string> pred = {"a", "b", "b"};
  const ClassificationReport r = classification_metrics(pred, truth, {});
  EXPECT_DOUBLE_EQ(r.precision, 0.75);
  EXPECT_DOUBLE_EQ(r.recall, 0.75);
  EXPECT_DOUBLE_EQ(r.f1_weighted, 2.0 / 3.0);
  ASSERT_EQ(r.per_class.size(), 2u);
  EXPECT_EQ(r.per_class[0].label, "a");
  EXPECT_EQ(r.per_class[0].false_negatives, 1u);
  EXPECT_EQ(r.per_class[1].false_positives, 1u);
}

TEST(ClassificationMetrics, MatchesConfusionOracle) {
  std::mt19937_64 rng(21);
  const std::vector<std::string> labels = {"bath", "bed", "kitchen", "living"};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> truth, pred;
    const std::size_t n = 1 + rng() % 30;
    for (std::size_t i = 0; i < n; ++i) {
      truth.push_back(labels[rng() % 4]);
      pred.push_back(rng() % 3 ? truth.back() : labels[rng() % 4]);
    }
    const ConfusionOracle o = confusion(pred, truth);
    const ClassificationReport r = classification_metrics(pred, truth, labels);
    EXPECT_NEAR(r.precision, o.macro_p, 1e-12);
    EXPECT_NEAR(r.recall, o.macro_r, 1e-12);
    EXPECT_NEAR(r.f1_weighted, o.weighted_f1, 1e-12);
  }
}

TEST(ClassificationMetrics, AveragePrecisionFromScores) {
  const std::vector<std::string> truth = {"c", "d", "c"};
  const std::vector<std::string> pred = {"c", "c", "d"};
  const std::vector<std::map<std::string, double>> scores = {
      {{"c", 0.9}, {"d", 0.1}}, {{"c", 0.8}, {"d", 0.2}}, {{"c", 0.7}, {"d", 0.3}}};
  const ClassificationReport r = classification_metrics(pred, truth, {}, scores);
  EXPECT_DOUBLE_EQ(r.per_class[0].average_precision, 0.5 + 0.5 * 2.0 / 3.0);
  // Class d: its only positive has score 0.2, ranked behind 0.3.
  EXPECT_DOUBLE_EQ(r.per_class[1].average_precision, 0.5);

  const std::vector<std::string> tie_truth = {"c", "d"};
  const std::vector<std::map<std::string, double>> tied = {{{"c", 0.5}}, {{"c", 0.5}}};
  EXPECT_DOUBLE_EQ(classification_metrics(tie_truth, tie_truth, {}, tied).per_class[0]
                       .average_precision,
                   0.5);
}

TEST(ClassificationMetrics, InputErrors) {
  const std::vector<std::string> a = {"x"};
  const std::vector<std::string> two = {"x", "y"};
  EXPECT_THROW(classification_metrics(a, two, {}), InputError);
  EXPECT_THROW(classification_metrics({}, {}, {}), InputError);
  const std::vector<std::string> labels = {"y"};
  EXPECT_THROW(classification_metrics(a, a, labels), InputError);
}

}  // namespace
}  // namespace roomscope
