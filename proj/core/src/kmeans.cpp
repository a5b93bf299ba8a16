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

#include "roomscope/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "roomscope/error.hpp"

namespace roomscope {
namespace {

// Platform-independent uniform draw in [0, 1).
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<Embedding> seed_plus_plus(std::span<const Embedding> views, std::size_t k,
                                      std::mt19937_64& rng) {
  const std::size_t n = views.size();
  std::vector<Embedding> centers;
  std::vector<bool> chosen(n, false);
  auto first = static_cast<std::size_t>(unit_draw(rng) * static_cast<double>(n));
  first = std::min(first, n - 1);
  centers.push_back(views[first]);
  chosen[first] = true;

  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    dist[i] = std::max(0.0, 1.0 - dot(views[i].values(), views[first].values()));
  }
  while (centers.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += chosen[i] ? 0.0 : dist[i];
    std::size_t pick = n;
    if (total > 0.0) {
      const double target = unit_draw(rng) * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (chosen[i] || dist[i] <= 0.0) continue;
        acc += dist[i];
        pick = i;
        if (acc > target) break;
      }
    } else {
      // Every remaining view duplicates a center; take the next unused one.
      for (std::size_t i = 0; i < n && pick == n; ++i) {
        if (!chosen[i]) pick = i;
      }
    }
    chosen[pick] = true;
    centers.push_back(views[pick]);
    for (std::size_t i = 0; i < n; ++i) {
      dist[i] = std::min(dist[i],
                         std::max(0.0, 1.0 - dot(views[i].values(), views[pick].values())));
    }
  }
  return centers;
}

double assign(std::span<const Embedding> views, const std::vector<Embedding>& centroids,
              std::vector<std::size_t>& assignment) {
  double objective = 0.0;
  for (std::size_t i = 0; i < views.size(); ++i) {
    std::size_t best = 0;
    double best_cos = -2.0;
    for (std::size_t c = 0; c < centroids.size(); ++c) {
      const double cs = dot(views[i].values(), centroids[c].values());
      if (cs > best_cos) {
        best_cos = cs;
        best = c;
      }
    }
    assignment[i] = best;
    objective += 1.0 - best_cos;
  }
  return objective;
}

std::vector<Embedding> update(std::span<const Embedding> views,
                              const std::vector<std::size_t>& assignment,
                              const std::vector<Embedding>& previous) {
  const std::size_t dim = views.front().dim();
  std::vector<std::vector<double>> sums(previous.size(), std::vector<double>(dim, 0.0));
  for (std::size_t i = 0; i < views.size(); ++i) {
    auto& s = sums[assignment[i]];
    const auto v = views[i].values();
    for (std::size_t d = 0; d < dim; ++d) s[d] += v[d];
  }
  std::vector<Embedding> next;
  next.reserve(previous.size());
  for (std::size_t c = 0; c < previous.size(); ++c) {
    double norm2 = 0.0;
    for (double v : sums[c]) norm2 += v * v;
    if (norm2 > 0.0) {
      next.emplace_back(std::move(sums[c]));
    } else {
      next.push_back(previous[c]);
    }
  }
  return next;
}

}  // namespace

KMeansResult spherical_kmeans(std::span<const Embedding> views, std::size_t k,
                              std::uint64_t seed, std::size_t max_iterations) {
  if (views.empty()) throw Error("k-means needs at least one view");
  if (k == 0 || k > views.size()) throw Error("k-means: k must lie in [1, #views]");
  for (const Embedding& v : views) {
    if (v.dim() != views.front().dim()) throw Error("k-means: dimension mismatch");
  }

  std::mt19937_64 rng(seed);
  KMeansResult result;
  result.centroids = seed_plus_plus(views, k, rng);
  result.assignment.assign(views.size(), 0);
  result.objective_trace.push_back(assign(views, result.centroids, result.assignment));

  std::vector<std::size_t> next_assignment(views.size());
  while (result.iterations < max_iterations) {
    result.centroids = update(views, result.assignment, result.centroids);
    result.objective_trace.push_back(assign(views, result.centroids, next_assignment));
    ++result.iterations;
    if (next_assignment == result.assignment) break;
    result.assignment.swap(next_assignment);
  }
  return result;
}

RepresentativeSet kmeans_representatives(std::string room_id, std::span<const Embedding> views,
                                         std::size_t k, std::uint64_t seed) {
  if (views.empty()) throw Error("room '" + room_id + "': no views");
  if (k == 0) throw Error("k must be at least 1");
  RepresentativeSet set{std::move(room_id), {}};
  if (k >= views.size()) {
    set.representatives.assign(views.begin(), views.end());
    return set;
  }
  set.representatives = spherical_kmeans(views, k, seed).centroids;
  return set;
}

}  // namespace roomscope
