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

#ifndef ROOMSCOPE_SYNTH_HPP_
#define ROOMSCOPE_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "roomscope/conformal.hpp"
#include "roomscope/embedding_io.hpp"
#include "roomscope/pipeline.hpp"
#include "roomscope/point_cloud.hpp"
#include "roomscope/polygon.hpp"

namespace roomscope {

inline constexpr std::size_t kMockEmbeddingDim = 512;

std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t splitmix64(std::uint64_t& state);

// Unit vector derived from (key, seed) by integer hashing only; the single
// floating step is the final normalization.
std::vector<float> mock_unit_vector(std::string_view key, std::uint64_t seed,
                                    std::size_t dim = kMockEmbeddingDim);

// Portable draws from a mt19937_64 (the std distributions are not portable).
double unit_uniform(std::mt19937_64& rng);
double standard_normal(std::mt19937_64& rng);

struct SceneSynthOptions {
  std::string scene_id = "synth_4room";
  std::uint64_t seed = 7;
  std::size_t dim = kMockEmbeddingDim;
  std::size_t n_views = kDefaultViews;
  std::size_t n_calibration = 200;
  std::size_t n_validation = 100;
};

// A 8 m x 6 m single-floor flat with four rooms separated by 0.15 m walls,
// a table in each room, floor and ceiling, plus mock view, label and
// instruction embeddings consistent with the room labels.
struct SyntheticScene {
  std::string scene_id;
  PointCloud cloud;
  std::vector<RoomPolygon> gt_rooms;  // labeled interiors
  EmbeddingTable view_embeddings;     // "<room>/view_<i>"
  EmbeddingTable label_embeddings;
  EmbeddingTable instruction_embeddings;
  std::vector<InstructionTruth> instructions;
  std::vector<LabeledScoreRecord> calibration;
  std::vector<LabeledScoreRecord> validation;
};

SyntheticScene make_four_room_scene(const SceneSynthOptions& options = {});

// Writes scene.ply, gt_rooms.json, views.emb1, labels.emb1,
// instructions.emb1, calibration.json, validation.json, manifest.json and
// config.json into dir.
void write_synthetic_scene(const SyntheticScene& scene, const std::filesystem::path& dir);

struct CoverageSynthOptions {
  std::size_t n_rooms = 8;
  std::size_t max_true = 3;
  double true_mean = 0.28;
  double other_mean = 0.22;
  double noise = 0.03;
  double temperature = 50.0;
};

// Exchangeable records with 1..max_true true rooms each; true rooms draw
// their raw similarity around a higher mean.
std::vector<LabeledScoreRecord> make_coverage_records(std::size_t count, std::uint64_t seed,
                                                      const CoverageSynthOptions& options = {},
                                                      std::string_view prefix = "cov");

// Twelve-room scenes alternating between two shapes: two matching rooms near
// f = 0.4 with a 0.12 distractor, or ten matching rooms near f = 0.095 with
// the other two sharing 0.05. Scores get multiplicative noise and are
// renormalized.
std::vector<LabeledScoreRecord> make_mixed_scale_records(std::size_t count, std::uint64_t seed,
                                                         std::string_view prefix = "mix");

struct MixedScaleBenchmark {
  std::vector<LabeledScoreRecord> calibration;
  std::vector<LabeledScoreRecord> validation;
  std::vector<LabeledScoreRecord> test;
};

MixedScaleBenchmark make_mixed_scale_benchmark(std::size_t n_cal, std::size_t n_val,
                                               std::size_t n_test, std::uint64_t seed);

}  // namespace roomscope

#endif  // ROOMSCOPE_SYNTH_HPP_
