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

#ifndef ROOMSCOPE_ROOM_SCORES_HPP_
#define ROOMSCOPE_ROOM_SCORES_HPP_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "roomscope/embedding.hpp"
#include "roomscope/kmeans.hpp"

namespace roomscope {

// Softmax scores f(X, Y_j) of one instruction over a scene's rooms.
struct ScoreDistribution {
  std::string instruction_id;
  std::string scene_id;
  std::vector<std::string> room_ids;
  std::vector<double> raw_similarities;  // empty when loaded as probabilities
  std::vector<double> f;
  double temperature = 0.0;  // 0 when unknown

  [[nodiscard]] std::size_t size() const { return room_ids.size(); }
  [[nodiscard]] std::size_t index_of(const std::string& room_id) const;  // throws if absent

  // n >= 1, matching lengths, unique ids, f finite and >= 0, sum f = 1 +- 1e-9.
  void validate() const;
};

inline constexpr double kDefaultTemperature = 100.0;
inline constexpr double kDistributionTolerance = 1e-9;

enum class Aggregation { kMax, kMean };

// softmax(temperature * raw) with max subtraction.
std::vector<double> softmax(std::span<const double> raw, double temperature);

// Raw similarity of a room: max (or mean) cosine between the text and the
// room's representatives.
double room_similarity(const Embedding& text, const RepresentativeSet& room,
                       Aggregation aggregation = Aggregation::kMax);

ScoreDistribution room_scores(const Embedding& text, std::span<const RepresentativeSet> rooms,
                              double temperature = kDefaultTemperature,
                              Aggregation aggregation = Aggregation::kMax);

// Label of the highest-f room; ties go to the smaller room id. Rooms missing
// from `room_labels` map to their own id.
std::string top1_label(const ScoreDistribution& dist,
                       const std::map<std::string, std::string>& room_labels);

struct LabelPrompt {
  std::string label;
  Embedding text;
};

struct RoomClassification {
  std::string room_id;
  std::string predicted;
  std::map<std::string, double> class_scores;  // softmax over labels
};

// Scores one room against every label prompt; prediction is the argmax label
// (ties to the smaller label).
RoomClassification classify_room(const RepresentativeSet& room,
                                 std::span<const LabelPrompt> labels,
                                 double temperature = kDefaultTemperature,
                                 Aggregation aggregation = Aggregation::kMax);

}  // namespace roomscope

#endif  // ROOMSCOPE_ROOM_SCORES_HPP_
