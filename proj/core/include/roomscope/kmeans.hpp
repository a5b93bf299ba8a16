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

#ifndef ROOMSCOPE_KMEANS_HPP_
#define ROOMSCOPE_KMEANS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "roomscope/embedding.hpp"

namespace roomscope {

struct RepresentativeSet {
  std::string room_id;
  std::vector<Embedding> representatives;

  [[nodiscard]] std::size_t k() const { return representatives.size(); }
};

struct KMeansResult {
  std::vector<Embedding> centroids;
  std::vector<std::size_t> assignment;  // per view
  // sum(1 - cos(view, assigned centroid)) after each assignment step.
  std::vector<double> objective_trace;
  std::size_t iterations = 0;
};

inline constexpr std::size_t kDefaultRepresentatives = 4;
inline constexpr std::size_t kKMeansMaxIterations = 100;

// Spherical k-means: k-means++ seeding on cosine distance using a seeded
// mt19937_64, then Lloyd iterations until the assignment stops changing or
// max_iterations is hit. Centroids are renormalized every update; an empty
// cluster keeps its previous centroid. Requires 1 <= k <= views.size().
KMeansResult spherical_kmeans(std::span<const Embedding> views, std::size_t k,
                              std::uint64_t seed,
                              std::size_t max_iterations = kKMeansMaxIterations);

// K representatives for one room; when k >= views.size() the views themselves
// are returned.
RepresentativeSet kmeans_representatives(std::string room_id, std::span<const Embedding> views,
                                         std::size_t k, std::uint64_t seed);

}  // namespace roomscope

#endif  // ROOMSCOPE_KMEANS_HPP_
