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

#ifndef ROOMSCOPE_EMBEDDING_IO_HPP_
#define ROOMSCOPE_EMBEDDING_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "roomscope/embedding.hpp"

namespace roomscope {

// In-memory EMB1 file: magic "EMB1", u32 count, u32 dim, count*dim f32
// row-major (all little-endian), then a UTF-8 JSON trailer {"ids":[...]}.
// Rows are kept exactly as stored; normalization happens in to_embeddings.
struct EmbeddingTable {
  std::vector<std::string> ids;
  std::uint32_t dim = 0;
  std::vector<float> values;
  // Trailer bytes as read, reused on write so files re-serialize bit-exactly.
  std::string raw_trailer;

  [[nodiscard]] std::size_t count() const { return ids.size(); }
  [[nodiscard]] std::span<const float> row(std::size_t i) const {
    return std::span<const float>(values).subspan(i * dim, dim);
  }
  void append(std::string id, std::span<const float> row);
};

EmbeddingTable parse_emb1(const std::string& bytes);
std::string serialize_emb1(const EmbeddingTable& table);

EmbeddingTable read_emb1(const std::filesystem::path& path);
void write_emb1(const EmbeddingTable& table, const std::filesystem::path& path);

// Normalized rows in file order.
std::vector<Embedding> to_embeddings(const EmbeddingTable& table);

// Groups rows whose ids look like "<room_id>/<view>" by room id, sorted by
// room id. Rows without a separator form a room of their own.
std::vector<std::pair<std::string, std::vector<Embedding>>> group_views_by_room(
    const EmbeddingTable& table);

}  // namespace roomscope

#endif  // ROOMSCOPE_EMBEDDING_IO_HPP_
