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

#include "roomscope/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "roomscope/error.hpp"

namespace roomscope {

Embedding::Embedding(std::vector<double> values) : values_(std::move(values)) {
  double norm2 = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error("degenerate embedding");
    norm2 += v * v;
  }
  if (values_.empty() || !(norm2 > 0.0)) throw Error("degenerate embedding");
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& v : values_) v *= inv;
}

Embedding Embedding::from_floats(std::span<const float> values) {
  return Embedding(std::vector<double>(values.begin(), values.end()));
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error("cosine_similarity: dimension mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (!(na > 0.0) || !(nb > 0.0)) throw Error("cosine_similarity: zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double cosine_similarity(const Embedding& a, const Embedding& b) {
  if (a.dim() != b.dim()) throw Error("cosine_similarity: dimension mismatch");
  double dot = 0.0;
  const auto x = a.values();
  const auto y = b.values();
  for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
  return std::clamp(dot, -1.0, 1.0);
}

}  // namespace roomscope
