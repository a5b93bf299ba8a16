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

#ifndef ROOMSCOPE_EMBEDDING_HPP_
#define ROOMSCOPE_EMBEDDING_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace roomscope {

// Unit-norm feature vector. Construction normalizes and rejects zero or
// non-finite input with Error("degenerate embedding").
class Embedding {
 public:
  explicit Embedding(std::vector<double> values);
  static Embedding from_floats(std::span<const float> values);

  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::size_t dim() const { return values_.size(); }

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  std::vector<double> values_;
};

// a.b / (|a||b|), clamped to [-1, 1]. Throws on dimension mismatch or a zero
// vector.
double cosine_similarity(std::span<const double> a, std::span<const double> b);
double cosine_similarity(const Embedding& a, const Embedding& b);

}  // namespace roomscope

#endif  // ROOMSCOPE_EMBEDDING_HPP_
