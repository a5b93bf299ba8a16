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

#include "roomscope/room_scores.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "roomscope/error.hpp"

namespace roomscope {

std::size_t ScoreDistribution::index_of(const std::string& room_id) const {
  const auto it = std::find(room_ids.begin(), room_ids.end(), room_id);
  if (it == room_ids.end()) {
    throw InputError("room '" + room_id + "' not in distribution for instruction '" +
                     instruction_id + "'");
  }
  return static_cast<std::size_t>(it - room_ids.begin());
}

void ScoreDistribution::validate() const {
  const std::string who = "instruction '" + instruction_id + "': ";
  if (room_ids.empty()) throw InputError(who + "distribution over zero rooms");
  if (f.size() != room_ids.size()) throw InputError(who + "score count does not match rooms");
  if (!raw_similarities.empty() && raw_similarities.size() != room_ids.size()) {
    throw InputError(who + "raw similarity count does not match rooms");
  }
  if (std::set<std::string>(room_ids.begin(), room_ids.end()).size() != room_ids.size()) {
    throw InputError(who + "duplicate room ids");
  }
  double sum = 0.0;
  for (double v : f) {
    if (!std::isfinite(v) || v < 0.0) throw InputError(who + "invalid probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kDistributionTolerance) {
    throw InputError(who + "probabilities do not sum to 1");
  }
}

std::vector<double> softmax(std::span<const double> raw, double temperature) {
  if (raw.empty()) throw Error("softmax of an empty vector");
  if (!(temperature > 0.0)) throw Error("temperature must be positive");
  const double top = *std::max_element(raw.begin(), raw.end());
  std::vector<double> out(raw.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = std::exp(temperature * (raw[i] - top));
    sum += out[i];
  }
  for (double& v : out) v /= sum;
  return out;
}

double room_similarity(const Embedding& text, const RepresentativeSet& room,
                       Aggregation aggregation) {
  if (room.representatives.empty()) throw Error("room '" + room.room_id + "' has no representatives");
  double best = -1.0;
  double sum = 0.0;
  for (const Embedding& rep : room.representatives) {
    if (rep.dim() != text.dim()) {
      throw Error("room '" + room.room_id + "': embedding dimension mismatch");
    }
    const double s = cosine_similarity(text, rep);
    best = std::max(best, s);
    sum += s;
  }
  return aggregation == Aggregation::kMax ? best
                                          : sum / static_cast<double>(room.representatives.size());
}

ScoreDistribution room_scores(const Embedding& text, std::span<const RepresentativeSet> rooms,
                              double temperature, Aggregation aggregation) {
  if (rooms.empty()) throw Error("room_scores needs at least one room");
  ScoreDistribution dist;
  dist.temperature = temperature;
  dist.room_ids.reserve(rooms.size());
  dist.raw_similarities.reserve(rooms.size());
  for (const RepresentativeSet& room : rooms) {
    dist.room_ids.push_back(room.room_id);
    dist.raw_similarities.push_back(room_similarity(text, room, aggregation));
  }
  dist.f = softmax(dist.raw_similarities, temperature);
  return dist;
}

std::string top1_label(const ScoreDistribution& dist,
                       const std::map<std::string, std::string>& room_labels) {
  if (dist.room_ids.empty()) throw Error("top1_label of an empty distribution");
  std::size_t best = 0;
  for (std::size_t i = 1; i < dist.size(); ++i) {
    if (dist.f[i] > dist.f[best] ||
        (dist.f[i] == dist.f[best] && dist.room_ids[i] < dist.room_ids[best])) {
      best = i;
    }
  }
  const auto it = room_labels.find(dist.room_ids[best]);
  return it == room_labels.end() ? dist.room_ids[best] : it->second;
}

RoomClassification classify_room(const RepresentativeSet& room,
                                 std::span<const LabelPrompt> labels, double temperature,
                                 Aggregation aggregation) {
  if (labels.empty()) throw Error("classify_room needs at least one label");
  std::vector<double> raw;
  raw.reserve(labels.size());
  for (const LabelPrompt& l : labels) raw.push_back(room_similarity(l.text, room, aggregation));
  const std::vector<double> f = softmax(raw, temperature);

  RoomClassification out{room.room_id, "", {}};
  std::size_t best = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out.class_scores[labels[i].label] = f[i];
    if (f[i] > f[best] || (f[i] == f[best] && labels[i].label < labels[best].label)) best = i;
  }
  out.predicted = labels[best].label;
  return out;
}

}  // namespace roomscope
