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

#ifndef ROOMSCOPE_TESTS_FIXTURES_HPP_
#define ROOMSCOPE_TESTS_FIXTURES_HPP_

#include <cstddef>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "roomscope/conformal.hpp"
#include "roomscope/room_scores.hpp"

namespace roomscope::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  [[nodiscard]] const std::filesystem::path& path() const { return path_; }
  [[nodiscard]] std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

// Room ids "r0", "r1", ... in the given order.
ScoreDistribution make_dist(const std::vector<double>& f, const std::string& instruction = "i",
                            const std::string& scene = "s");

LabeledScoreRecord make_record(const std::vector<double>& f, const std::vector<std::size_t>& truth,
                               const std::string& instruction = "i",
                               const std::string& scene = "s");

// Distribution over n rooms from small integer weights, so ties and exact
// prefix-sum collisions are common. At least one weight is positive.
ScoreDistribution random_tied_dist(std::mt19937_64& rng, std::size_t n,
                                   const std::string& instruction = "i");

// A record from random_tied_dist with 1..min(3, n) distinct true rooms.
LabeledScoreRecord random_tied_record(std::mt19937_64& rng, std::size_t n,
                                      const std::string& instruction = "i");

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace roomscope::testing

#endif  // ROOMSCOPE_TESTS_FIXTURES_HPP_
