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

#ifndef ROOMSCOPE_CLASSIFICATION_METRICS_HPP_
#define ROOMSCOPE_CLASSIFICATION_METRICS_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace roomscope {

struct ClassMetrics {
  std::string label;
  std::size_t support = 0;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double average_precision = 0.0;
};

struct ClassificationReport {
  double precision = 0.0;    // macro over classes present in truth
  double recall = 0.0;       // macro over classes present in truth
  double f1_weighted = 0.0;  // support-weighted per-class F1
  double map = 0.0;          // mean per-class AP over classes present in truth
  std::vector<ClassMetrics> per_class;  // classes present in truth, sorted
};

// Per-class precision/recall use 0 for an empty denominator. AP for class c
// is the step-wise area sum_t (R_t - R_{t-1}) * P_t over the distinct values
// t of class_scores[i][c], highest first, so tied scores form one step.
// Without class_scores a sample scores 1 for its predicted class and 0
// otherwise. Only classes present in truth are averaged; when `label_set` is
// non-empty every label must belong to it.
ClassificationReport classification_metrics(
    std::span<const std::string> predicted, std::span<const std::string> truth,
    std::span<const std::string> label_set,
    std::span<const std::map<std::string, double>> class_scores = {});

}  // namespace roomscope

#endif  // ROOMSCOPE_CLASSIFICATION_METRICS_HPP_
