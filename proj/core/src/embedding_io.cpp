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

#include "roomscope/embedding_io.hpp"

#include <cstring>
#include <map>
#include <sstream>

#include "binary_io.hpp"
#include "json.hpp"
#include "roomscope/error.hpp"

namespace roomscope {

using nlohmann::json;

namespace {
constexpr char kMagic[4] = {'E', 'M', 'B', '1'};
}

void EmbeddingTable::append(std::string id, std::span<const float> r) {
  if (ids.empty() && values.empty() && dim == 0) dim = static_cast<std::uint32_t>(r.size());
  if (r.size() != dim) throw Error("EMB1: row dimension mismatch for '" + id + "'");
  ids.push_back(std::move(id));
  values.insert(values.end(), r.begin(), r.end());
  raw_trailer.clear();
}

EmbeddingTable parse_emb1(const std::string& bytes) {
  std::istringstream in(bytes);
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw InputError("EMB1: bad magic");
  }
  const auto count = detail::read_le<std::uint32_t>(in, "EMB1 header");
  EmbeddingTable table;
  table.dim = detail::read_le<std::uint32_t>(in, "EMB1 header");
  const std::size_t n_values = static_cast<std::size_t>(count) * table.dim;
  if (bytes.size() < 12 + n_values * sizeof(float)) throw InputError("truncated EMB1 body");
  table.values.resize(n_values);
  for (float& v : table.values) v = detail::read_le<float>(in, "EMB1 body");

  table.raw_trailer = bytes.substr(12 + n_values * sizeof(float));
  json trailer;
  try {
    trailer = json::parse(table.raw_trailer);
    table.ids = trailer.at("ids").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw InputError(std::string("EMB1: malformed trailer: ") + e.what());
  }
  if (table.ids.size() != count) {
    throw InputError("EMB1: trailer has " + std::to_string(table.ids.size()) + " ids for " +
                     std::to_string(count) + " rows");
  }
  return table;
}

std::string serialize_emb1(const EmbeddingTable& table) {
  if (table.values.size() != table.ids.size() * table.dim) {
    throw Error("EMB1: table size does not match count*dim");
  }
  std::ostringstream out;
  out.write(kMagic, 4);
  detail::write_le(out, static_cast<std::uint32_t>(table.ids.size()));
  detail::write_le(out, table.dim);
  for (float v : table.values) detail::write_le(out, v);

  bool reuse = false;
  if (!table.raw_trailer.empty()) {
    try {
      reuse = json::parse(table.raw_trailer).at("ids").get<std::vector<std::string>>() ==
              table.ids;
    } catch (const json::exception&) {
      reuse = false;
    }
  }
  out << (reuse ? table.raw_trailer : json{{"ids", table.ids}}.dump());
  return out.str();
}

EmbeddingTable read_emb1(const std::filesystem::path& path) {
  try {
    return parse_emb1(detail::read_file(path));
  } catch (const InputError& e) {
    throw InputError("'" + path.string() + "': " + e.what());
  }
}

void write_emb1(const EmbeddingTable& table, const std::filesystem::path& path) {
  detail::write_file(path, serialize_emb1(table));
}

std::vector<Embedding> to_embeddings(const EmbeddingTable& table) {
  std::vector<Embedding> out;
  out.reserve(table.count());
  for (std::size_t i = 0; i < table.count(); ++i) {
    try {
      out.push_back(Embedding::from_floats(table.row(i)));
    } catch (const Error&) {
      throw InputError("degenerate embedding for id '" + table.ids[i] + "'");
    }
  }
  return out;
}

std::vector<std::pair<std::string, std::vector<Embedding>>> group_views_by_room(
    const EmbeddingTable& table) {
  std::map<std::string, std::vector<Embedding>> groups;
  std::vector<Embedding> rows = to_embeddings(table);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string& id = table.ids[i];
    const auto slash = id.rfind('/');
    groups[slash == std::string::npos ? id : id.substr(0, slash)].push_back(std::move(rows[i]));
  }
  return {std::make_move_iterator(groups.begin()), std::make_move_iterator(groups.end())};
}

}  // namespace roomscope
