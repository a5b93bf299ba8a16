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

#include "fixtures.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>

namespace roomscope::testing {

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("roomscope_" + tag + "_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

ScoreDistribution make_dist(const std::vector<double>& f, const std::string& instruction,
                            const std::string& scene) {
  ScoreDistribution d;
  d.instruction_id = instruction;
  d.scene_id = scene;
  for (std::size_t i = 0; i < f.size(); ++i) d.room_ids.push_back("r" + std::to_string(i));
  d.f = f;
  return d;
}

LabeledScoreRecord make_record(const std::vector<double>& f, const std::vector<std::size_t>& truth,
                               const std::string& instruction, const std::string& scene) {
  LabeledScoreRecord r;
  r.dist = make_dist(f, instruction, scene);
  for (std::size_t t : truth) r.true_rooms.push_back(r.dist.room_ids.at(t));
  return r;
}

ScoreDistribution random_tied_dist(std::mt19937_64& rng, std::size_t n,
                                   const std::string& instruction) {
  std::vector<double> w(n);
  double sum = 0.0;
  do {
    sum = 0.0;
    for (double& x : w) {
      x = static_cast<double>(rng() % 5);
      sum += x;
    }
  } while (sum == 0.0);
  for (double& x : w) x /= sum;
  return make_dist(w, instruction);
}

LabeledScoreRecord random_tied_record(std::mt19937_64& rng, std::size_t n,
                                      const std::string& instruction) {
  LabeledScoreRecord r;
  r.dist = random_tied_dist(rng, n, instruction);
  const std::size_t m = 1 + rng() % std::min<std::size_t>(3, n);
  std::vector<std::string> ids = r.dist.room_ids;
  std::shuffle(ids.begin(), ids.end(), rng);
  r.true_rooms.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(m));
  return r;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

}  // namespace roomscope::testing
