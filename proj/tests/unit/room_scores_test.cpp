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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "roomscope/error.hpp"
#include "roomscope/room_scores.hpp"

namespace roomscope {
namespace {

const std::vector<std::string> kIds = {"r0", "r1", "r2", "r3"};

// Rooms whose single representative has cosine `sims[i]` with (1, 0).
std::vector<RepresentativeSet> rooms_with(const std::vector<double>& sims) {
  std::vector<RepresentativeSet> rooms;
  for (std::size_t i = 0; i < sims.size(); ++i) {
    const double s = sims[i];
    rooms.push_back({"r" + std::to_string(i), {Embedding({s, std::sqrt(1 - s * s)})}});
  }
  return rooms;
}

const Embedding kText({1.0, 0.0});

TEST(Softmax, ClosedFormAndSymmetry) {
  const std::vector<double> raw = {0.9, 0.8};
  const auto f = softmax(raw, 1.0);
  EXPECT_NEAR(f[0], 0.52498, 1e-5);
  EXPECT_NEAR(f[1], 0.47502, 1e-5);
  const std::vector<double> eq = {0.3, 0.3};
  EXPECT_EQ(softmax(eq, 100.0), (std::vector<double>{0.5, 0.5}));
  const auto sharp = softmax(raw, 1e4);
  EXPECT_GT(sharp[0], 1.0 - 1e-12);
  const std::vector<double> big = {1000.0, 999.0};
  EXPECT_TRUE(std::isfinite(softmax(big, 100.0)[0]));
}

TEST(Softmax, ShiftInvarianceAndPermutationEquivariance) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> raw(1 + rng() % 10);
    for (double& r : raw) r = std::uniform_real_distribution<double>(-1, 1)(rng);
    const double t = std::uniform_real_distribution<double>(0.1, 200)(rng);
    const auto f = softmax(raw, t);
    double sum = 0.0;
    for (double x : f) {
      EXPECT_GE(x, 0.0);
      sum += x;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    std::vector<double> shifted = raw;
    const double c = std::uniform_real_distribution<double>(-5, 5)(rng);
    for (double& r : shifted) r += c;
    const auto g = softmax(shifted, t);
    for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(f[i], g[i], 1e-12);

    std::vector<std::size_t> perm(raw.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> permuted(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) permuted[i] = raw[perm[i]];
    const auto h = softmax(permuted, t);
    for (std::size_t i = 0; i < raw.size(); ++i) EXPECT_NEAR(h[i], f[perm[i]], 1e-15);
  }
}

TEST(RoomScores, DistributionFromRepresentatives) {
  const auto rooms = rooms_with({0.9, 0.8});
  const ScoreDistribution d = room_scores(kText, rooms, 1.0);
  EXPECT_EQ(d.room_ids, (std::vector<std::string>{"r0", "r1"}));
  EXPECT_NEAR(d.raw_similarities[0], 0.9, 1e-12);
  EXPECT_NEAR(d.f[0], 0.52498, 1e-5);
  EXPECT_EQ(d.temperature, 1.0);
  EXPECT_NO_THROW(d.validate());
  EXPECT_THROW(room_scores(kText, {}, 1.0), Error);
}

TEST(RoomScores, MaxAggregationIsMonotone) {
  RepresentativeSet room{"r", {Embedding({0, 1}), Embedding({0.6, 0.8})}};
  const double before = room_similarity(kText, room);
  EXPECT_NEAR(before, 0.6, 1e-12);
  EXPECT_NEAR(room_similarity(kText, room, Aggregation::kMean), 0.3, 1e-12);
  std::mt19937_64 rng(12);
  double current = before;
  for (int i = 0; i < 50; ++i) {
    const double a = std::uniform_real_distribution<double>(0, 6.3)(rng);
    room.representatives.emplace_back(std::vector<double>{std::cos(a), std::sin(a)});
    const double next = room_similarity(kText, room);
    EXPECT_GE(next, current);
    current = next;
  }
}

TEST(RoomScores, Top1LabelAndTies) {
  const std::map<std::string, std::string> labels = {{"r0", "kitchen"}, {"r1", "bath"}};
  EXPECT_EQ(top1_label(testing::make_dist({0.7, 0.3}), labels), "kitchen");
  EXPECT_EQ(top1_label(testing::make_dist({0.3, 0.7}), labels), "bath");
  EXPECT_EQ(top1_label(testing::make_dist({0.5, 0.5}), labels), "kitchen");
  EXPECT_EQ(top1_label(testing::make_dist({0.2, 0.2, 0.6}), labels), "r2");
}

TEST(RoomScores, ArgmaxSurvivesMonotoneTransforms) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> sims(2 + rng() % 6);
    for (double& s : sims) s = std::uniform_real_distribution<double>(-0.9, 0.9)(rng);
    const auto rooms = rooms_with(sims);
    const std::map<std::string, std::string> none;
    const std::string a = top1_label(room_scores(kText, rooms, 1.0), none);
    const std::string b = top1_label(room_scores(kText, rooms, 250.0), none);
    const auto best = std::max_element(sims.begin(), sims.end()) - sims.begin();
    EXPECT_EQ(a, "r" + std::to_string(best));
    EXPECT_EQ(a, b);
  }
}

TEST(RoomScores, DistributionValidation) {
  ScoreDistribution d = testing::make_dist({0.5, 0.5});
  EXPECT_NO_THROW(d.validate());
  EXPECT_EQ(d.index_of("r1"), 1u);
  EXPECT_THROW(static_cast<void>(d.index_of("zz")), Error);
  d.f = {0.5, 0.6};
  EXPECT_THROW(d.validate(), Error);
  d.f = {1.5, -0.5};
  EXPECT_THROW(d.validate(), Error);
  d = testing::make_dist({0.5, 0.5});
  d.room_ids = {"r0", "r0"};
  EXPECT_THROW(d.validate(), Error);
}

TEST(RoomScores, ClassifyAgainstLabelPrompts) {
  const RepresentativeSet room{"r", {Embedding({0.9, 0.1})}};
  const std::vector<LabelPrompt> labels = {{"bathroom", Embedding({0.0, 1.0})},
                                           {"kitchen", Embedding({1.0, 0.0})}};
  const RoomClassification c = classify_room(room, labels);
  EXPECT_EQ(c.predicted, "kitchen");
  EXPECT_EQ(c.room_id, "r");
  EXPECT_NEAR(c.class_scores.at("bathroom") + c.class_scores.at("kitchen"), 1.0, 1e-12);
  const std::vector<LabelPrompt> tie = {{"b", Embedding({1.0, 0.0})}, {"a", Embedding({1.0, 0.0})}};
  EXPECT_EQ(classify_room(room, tie).predicted, "a");
}

TEST(RoomScores, PermutationEquivariantInRoomOrder) {
  std::mt19937_64 rng(60);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> sims(2 + rng() % 6);
    for (double& s : sims) s = std::uniform_real_distribution<double>(-0.9, 0.9)(rng);
    auto rooms = rooms_with(sims);
    const ScoreDistribution base = room_scores(kText, rooms);
    std::shuffle(rooms.begin(), rooms.end(), rng);
    const ScoreDistribution perm = room_scores(kText, rooms);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      const std::size_t j = base.index_of(perm.room_ids[i]);
      EXPECT_NEAR(perm.f[i], base.f[j], 1e-15);
      EXPECT_EQ(perm.raw_similarities[i], base.raw_similarities[j]);
    }
  }
}
}  // namespace
}  // namespace roomscope
