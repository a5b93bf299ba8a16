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

#include "roomscope/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <utility>

#include "binary_io.hpp"
#include "json.hpp"
#include "roomscope/error.hpp"
#include "roomscope/kmeans.hpp"
#include "roomscope/point_cloud_io.hpp"
#include "roomscope/room_io.hpp"
#include "roomscope/room_scores.hpp"
#include "roomscope/selection_io.hpp"

namespace roomscope {

using nlohmann::json;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<float> mock_unit_vector(std::string_view key, std::uint64_t seed, std::size_t dim) {
  if (dim == 0) throw InputError("mock embedding dimension must be positive");
  std::uint64_t seed_state = seed;
  std::uint64_t state = fnv1a64(key) ^ splitmix64(seed_state);
  std::vector<double> v(dim);
  double norm2 = 0.0;
  for (double& x : v) {
    x = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-52 - 1.0;
    norm2 += x * x;
  }
  const double norm = std::sqrt(norm2);
  std::vector<float> out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = static_cast<float>(v[i] / norm);
  return out;
}

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double standard_normal(std::mt19937_64& rng) {
  const double u1 = 1.0 - unit_uniform(rng);  // (0, 1]
  const double u2 = unit_uniform(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

constexpr double kCell = 0.05;
constexpr int kCols = 160;
constexpr int kRows = 120;
constexpr double kCeiling = 2.6;
constexpr int kWallSamples = 100;  // per wall cell, stratified in z

struct RoomLayout {
  const char* id;
  const char* label;
  int c0, c1, r0, r1;  // half-open cell ranges
};

constexpr RoomLayout kRooms[] = {
    {"room_a", "bedroom", 3, 79, 3, 59},
    {"room_b", "kitchen", 82, 157, 3, 59},
    {"room_c", "bathroom", 3, 79, 62, 117},
    {"room_d", "living_room", 82, 157, 62, 117},
};

constexpr const char* kLabels[] = {"bathroom", "bedroom", "dining_room",
                                   "kitchen", "living_room", "office"};

bool is_wall(int c, int r) {
  return c < 3 || c >= kCols - 3 || r < 3 || r >= kRows - 3 || (c >= 79 && c < 82) ||
         (r >= 59 && r < 62);
}

// Normalized weighted sum of float vectors.
std::vector<float> blend(const std::vector<std::pair<double, std::vector<float>>>& parts) {
  const std::size_t dim = parts.front().second.size();
  std::vector<double> acc(dim, 0.0);
  for (const auto& [w, v] : parts) {
    for (std::size_t i = 0; i < dim; ++i) acc[i] += w * static_cast<double>(v[i]);
  }
  double norm2 = 0.0;
  for (double x : acc) norm2 += x * x;
  const double norm = std::sqrt(norm2);
  std::vector<float> out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = static_cast<float>(acc[i] / norm);
  return out;
}

PointCloud make_cloud(std::mt19937_64& rng) {
  PointCloud cloud;
  auto jitter = [&] { return 0.1 + 0.8 * unit_uniform(rng); };
  cloud.points.push_back({0.0, 0.0, 0.0});
  cloud.points.push_back({kCols * kCell, kRows * kCell, kCeiling});
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      auto at = [&](double z) {
        cloud.points.push_back({(c + jitter()) * kCell, (r + jitter()) * kCell, z});
      };
      at(0.02 * unit_uniform(rng));
      at(kCeiling - 0.02 * unit_uniform(rng));
      if (is_wall(c, r)) {
        for (int j = 0; j < kWallSamples; ++j) at((j + jitter()) * kCeiling / kWallSamples);
      }
    }
  }
  // A table top per room, well inside the free space.
  for (const RoomLayout& room : kRooms) {
    const int cc = (room.c0 + room.c1) / 2;
    const int rc = (room.r0 + room.r1) / 2;
    for (int r = rc - 4; r < rc + 4; ++r) {
      for (int c = cc - 8; c < cc + 8; ++c) {
        for (int j = 0; j < 6; ++j) {
          cloud.points.push_back(
              {(c + jitter()) * kCell, (r + jitter()) * kCell, 0.70 + 0.06 * unit_uniform(rng)});
        }
      }
    }
  }
  return cloud;
}

std::vector<float> concept_vector(const std::string& label, const SceneSynthOptions& o) {
  return mock_unit_vector("concept/" + label, o.seed, o.dim);
}

std::vector<float> instruction_vector(const std::vector<std::string>& labels,
                                      const std::string& key, double noise,
                                      const SceneSynthOptions& o) {
  std::vector<std::pair<double, std::vector<float>>> parts;
  for (const std::string& l : labels) parts.emplace_back(1.0, concept_vector(l, o));
  parts.emplace_back(noise, mock_unit_vector(key, o.seed, o.dim));
  return blend(parts);
}

std::vector<LabeledScoreRecord> make_scene_records(const std::vector<RepresentativeSet>& reps,
                                                   const SceneSynthOptions& o, std::size_t count,
                                                   const std::string& prefix,
                                                   std::uint64_t stream) {
  std::mt19937_64 rng(o.seed ^ (stream * 0x9e3779b97f4a7c15ULL));
  std::vector<LabeledScoreRecord> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<std::size_t> order{0, 1, 2, 3};
    for (std::size_t j = 0; j < 2; ++j) {
      const std::size_t pick = j + static_cast<std::size_t>(unit_uniform(rng) * (4.0 - j));
      std::swap(order[j], order[std::min<std::size_t>(pick, 3)]);
    }
    const std::size_t m = unit_uniform(rng) < 0.3 ? 2 : 1;
    std::vector<std::size_t> chosen(order.begin(), order.begin() + static_cast<long>(m));
    std::sort(chosen.begin(), chosen.end());

    LabeledScoreRecord rec;
    std::vector<std::string> labels;
    for (std::size_t idx : chosen) {
      labels.emplace_back(kRooms[idx].label);
      rec.true_rooms.emplace_back(kRooms[idx].id);
    }
    char id[32];
    std::snprintf(id, sizeof id, "%s_%04zu", prefix.c_str(), i);
    const Embedding text = Embedding::from_floats(instruction_vector(labels, id, 2.5, o));
    rec.dist = room_scores(text, reps);
    rec.dist.instruction_id = id;
    rec.dist.scene_id = o.scene_id;
    rec.instruction = "request for the " + labels.front() + (m == 2 ? " and " + labels[1] : "");
    rec.gt_room_types = labels;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

SyntheticScene make_four_room_scene(const SceneSynthOptions& o) {
  if (o.n_views == 0) throw InputError("synthetic scene needs at least one view");
  SyntheticScene s;
  s.scene_id = o.scene_id;
  std::mt19937_64 rng(o.seed);
  s.cloud = make_cloud(rng);

  for (const RoomLayout& room : kRooms) {
    const double x0 = room.c0 * kCell, x1 = room.c1 * kCell;
    const double y0 = room.r0 * kCell, y1 = room.r1 * kCell;
    s.gt_rooms.push_back({room.id, {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}, 1.0, room.label});
  }

  s.view_embeddings.dim = static_cast<std::uint32_t>(o.dim);
  for (const RoomLayout& room : kRooms) {
    for (std::size_t v = 0; v < o.n_views; ++v) {
      const std::string id = std::string(room.id) + "/view_" + std::to_string(v);
      s.view_embeddings.append(
          id, blend({{1.0, concept_vector(room.label, o)},
                     {0.6, mock_unit_vector("view/" + id, o.seed, o.dim)}}));
    }
  }
  s.label_embeddings.dim = static_cast<std::uint32_t>(o.dim);
  for (const char* label : kLabels) {
    s.label_embeddings.append(label,
                              blend({{1.0, concept_vector(label, o)},
                                     {0.3, mock_unit_vector(std::string("label/") + label,
                                                            o.seed, o.dim)}}));
  }

  s.instructions = {
      {"inst_sleep", "I am tired and want to lie down", {"room_a"}, {"bedroom"}},
      {"inst_cook", "Where can I cook dinner", {"room_b"}, {"kitchen"}},
      {"inst_wash", "I need to wash my hands", {"room_b", "room_c"}, {"kitchen", "bathroom"}},
  };
  s.instruction_embeddings.dim = static_cast<std::uint32_t>(o.dim);
  for (const InstructionTruth& inst : s.instructions) {
    s.instruction_embeddings.append(
        inst.id, instruction_vector(inst.gt_room_types, "instruction/" + inst.id, 0.5, o));
  }

  std::vector<RepresentativeSet> reps;
  for (const auto& [room, views] : group_views_by_room(s.view_embeddings)) {
    reps.push_back(kmeans_representatives(room, views, kDefaultRepresentatives, o.seed));
  }
  s.calibration = make_scene_records(reps, o, o.n_calibration, "cal", 1);
  s.validation = make_scene_records(reps, o, o.n_validation, "val", 2);
  return s;
}

void write_synthetic_scene(const SyntheticScene& s, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_point_cloud(s.cloud, dir / "scene.ply");
  export_room_polygons(s.gt_rooms, dir / "gt_rooms.json");
  write_emb1(s.view_embeddings, dir / "views.emb1");
  write_emb1(s.label_embeddings, dir / "labels.emb1");
  write_emb1(s.instruction_embeddings, dir / "instructions.emb1");
  save_score_records(s.calibration, dir / "calibration.json");
  save_score_records(s.validation, dir / "validation.json");

  json instructions = json::array();
  for (const InstructionTruth& inst : s.instructions) {
    instructions.push_back({{"id", inst.id},
                            {"text", inst.text},
                            {"true_rooms", inst.true_rooms},
                            {"gt_room_types", inst.gt_room_types}});
  }
  json scene = {{"scene_id", s.scene_id},
                {"point_cloud", "scene.ply"},
                {"gt_rooms", "gt_rooms.json"},
                {"view_embeddings", "views.emb1"},
                {"label_embeddings", "labels.emb1"},
                {"instruction_embeddings", "instructions.emb1"},
                {"instructions", std::move(instructions)}};
  json manifest = {{"calibration_records", "calibration.json"},
                   {"validation_records", "validation.json"},
                   {"scenes", json::array({std::move(scene)})}};
  detail::write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  detail::write_file(dir / "config.json", serialize_config(PipelineConfig{}));
}

std::vector<LabeledScoreRecord> make_coverage_records(std::size_t count, std::uint64_t seed,
                                                      const CoverageSynthOptions& o,
                                                      std::string_view prefix) {
  if (o.n_rooms == 0 || o.max_true == 0 || o.max_true > o.n_rooms) {
    throw InputError("coverage generator: need 1 <= max_true <= n_rooms");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::string> rooms;
  for (std::size_t j = 0; j < o.n_rooms; ++j) rooms.push_back("r" + std::to_string(j));

  std::vector<LabeledScoreRecord> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto m = 1 + static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(o.max_true));
    m = std::min(m, o.max_true);
    std::vector<std::size_t> order(o.n_rooms);
    for (std::size_t j = 0; j < o.n_rooms; ++j) order[j] = j;
    for (std::size_t j = 0; j < m; ++j) {
      auto pick = j + static_cast<std::size_t>(unit_uniform(rng) *
                                               static_cast<double>(o.n_rooms - j));
      std::swap(order[j], order[std::min(pick, o.n_rooms - 1)]);
    }
    std::vector<bool> is_true(o.n_rooms, false);
    for (std::size_t j = 0; j < m; ++j) is_true[order[j]] = true;

    LabeledScoreRecord rec;
    std::vector<double> raw(o.n_rooms);
    for (std::size_t j = 0; j < o.n_rooms; ++j) {
      raw[j] = (is_true[j] ? o.true_mean : o.other_mean) + o.noise * standard_normal(rng);
      if (is_true[j]) rec.true_rooms.push_back(rooms[j]);
    }
    rec.dist.instruction_id = std::string(prefix) + "_" + std::to_string(i);
    rec.dist.scene_id = std::string(prefix) + "_scene_" + std::to_string(i);
    rec.dist.room_ids = rooms;
    rec.dist.raw_similarities = raw;
    rec.dist.f = softmax(raw, o.temperature);
    rec.dist.temperature = o.temperature;
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<LabeledScoreRecord> make_mixed_scale_records(std::size_t count, std::uint64_t seed,
                                                         std::string_view prefix) {
  constexpr std::size_t kRoomsPerScene = 12;
  std::mt19937_64 rng(seed);
  std::vector<std::string> rooms;
  for (std::size_t j = 0; j < kRoomsPerScene; ++j) {
    rooms.push_back((j < 10 ? "r0" : "r") + std::to_string(j));
  }
  std::vector<LabeledScoreRecord> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const bool few = i % 2 == 0;
    std::vector<double> base(kRoomsPerScene);
    std::vector<bool> matching(kRoomsPerScene, false);
    if (few) {
      base = {0.4, 0.4, 0.12};
      base.resize(kRoomsPerScene, 0.08 / 9.0);
      matching[0] = matching[1] = true;
    } else {
      base.assign(10, 0.095);
      base.push_back(0.025);
      base.push_back(0.025);
      for (std::size_t j = 0; j < 10; ++j) matching[j] = true;
    }
    std::vector<std::size_t> slot(kRoomsPerScene);
    for (std::size_t j = 0; j < kRoomsPerScene; ++j) slot[j] = j;
    for (std::size_t j = kRoomsPerScene - 1; j > 0; --j) {
      auto pick = static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(j + 1));
      std::swap(slot[j], slot[std::min(pick, j)]);
    }
    LabeledScoreRecord rec;
    std::vector<double> f(kRoomsPerScene);
    double sum = 0.0;
    for (std::size_t j = 0; j < kRoomsPerScene; ++j) {
      f[slot[j]] = base[j] * std::exp(0.1 * standard_normal(rng));
      sum += f[slot[j]];
    }
    for (double& v : f) v /= sum;
    for (std::size_t j = 0; j < kRoomsPerScene; ++j) {
      if (matching[j]) rec.true_rooms.push_back(rooms[slot[j]]);
    }
    std::sort(rec.true_rooms.begin(), rec.true_rooms.end());
    rec.dist.instruction_id = std::string(prefix) + "_" + std::to_string(i);
    rec.dist.scene_id = std::string(prefix) + "_scene_" + std::to_string(i);
    rec.dist.room_ids = rooms;
    rec.dist.f = std::move(f);
    rec.instruction = few ? "request matching two rooms" : "request matching ten rooms";
    out.push_back(std::move(rec));
  }
  return out;
}

MixedScaleBenchmark make_mixed_scale_benchmark(std::size_t n_cal, std::size_t n_val,
                                               std::size_t n_test, std::uint64_t seed) {
  std::uint64_t state = seed;
  MixedScaleBenchmark b;
  b.calibration = make_mixed_scale_records(n_cal, splitmix64(state), "mix_cal");
  b.validation = make_mixed_scale_records(n_val, splitmix64(state), "mix_val");
  b.test = make_mixed_scale_records(n_test, splitmix64(state), "mix_test");
  return b;
}

}  // namespace roomscope
