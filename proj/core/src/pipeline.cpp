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

#include "roomscope/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <set>

#include "binary_io.hpp"
#include "json.hpp"
#include "roomscope/digest.hpp"
#include "roomscope/embedding_io.hpp"
#include "roomscope/error.hpp"
#include "roomscope/grid_io.hpp"
#include "roomscope/point_cloud_io.hpp"
#include "roomscope/room_io.hpp"
#include "roomscope/segmenter.hpp"

namespace roomscope {

using nlohmann::json;
namespace fs = std::filesystem;

void PipelineConfig::validate() const {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw InputError("config: cell_size must be positive");
  }
  border.validate();
  if (!std::isfinite(wall_threshold)) throw InputError("config: wall_threshold must be finite");
  if (n_views == 0) throw InputError("config: n_views must be positive");
  if (!std::isfinite(z_c)) throw InputError("config: z_c must be finite");
  if (k_reps == 0) throw InputError("config: k_reps must be positive");
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw InputError("config: temperature must be positive");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("config: alpha must lie in (0, 1)");
  for (double a : alpha_grid) {
    if (!(a > 0.0 && a < 1.0)) throw InputError("config: alpha_grid values must lie in (0, 1)");
  }
  std::set<Method> seen;
  for (Method m : methods) {
    if (m == Method::kImported) throw InputError("config: methods may only list acp and cp");
    if (!seen.insert(m).second) throw InputError("config: duplicate method");
  }
}

PipelineConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("config: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("config: expected a JSON object");
  PipelineConfig c;
  for (const auto& [key, v] : doc.items()) {
    try {
      if (key == "cell_size") {
        c.cell_size = v.get<double>();
      } else if (key == "n_slices") {
        c.border.n_slices = v.get<std::size_t>();
      } else if (key == "delta_b") {
        c.border.delta_b = v.get<double>();
      } else if (key == "delta_t") {
        c.border.delta_t = v.get<double>();
      } else if (key == "merge_fraction") {
        c.border.merge_fraction = v.get<double>();
      } else if (key == "gamma") {
        c.border.gamma = v.get<double>();
      } else if (key == "wall_threshold") {
        c.wall_threshold = v.get<double>();
      } else if (key == "n_views") {
        c.n_views = v.get<std::size_t>();
      } else if (key == "z_c") {
        c.z_c = v.get<double>();
      } else if (key == "k_reps") {
        c.k_reps = v.get<std::size_t>();
      } else if (key == "temperature") {
        c.temperature = v.get<double>();
      } else if (key == "aggregation") {
        const std::string a = v.get<std::string>();
        if (a == "max") {
          c.aggregation = Aggregation::kMax;
        } else if (a == "mean") {
          c.aggregation = Aggregation::kMean;
        } else {
          throw InputError("config: aggregation must be max or mean");
        }
      } else if (key == "alpha") {
        c.alpha = v.get<double>();
      } else if (key == "alpha_grid") {
        c.alpha_grid = v.is_null() ? std::vector<double>{} : v.get<std::vector<double>>();
      } else if (key == "methods") {
        c.methods.clear();
        for (const json& m : v) c.methods.push_back(method_from_string(m.get<std::string>()));
      } else if (key == "seed") {
        c.seed = v.get<std::uint64_t>();
      } else {
        throw InputError("config: unknown key '" + key + "'");
      }
    } catch (const json::exception& e) {
      throw InputError("config: bad value for '" + key + "': " + e.what());
    }
  }
  c.validate();
  return c;
}

namespace {

json config_json(const PipelineConfig& c) {
  json methods = json::array();
  for (Method m : c.methods) methods.push_back(std::string(to_string(m)));
  return {{"cell_size", c.cell_size},
          {"n_slices", c.border.n_slices},
          {"delta_b", c.border.delta_b},
          {"delta_t", c.border.delta_t},
          {"merge_fraction", c.border.merge_fraction},
          {"gamma", c.border.gamma},
          {"wall_threshold", c.wall_threshold},
          {"n_views", c.n_views},
          {"z_c", c.z_c},
          {"k_reps", c.k_reps},
          {"temperature", c.temperature},
          {"aggregation", c.aggregation == Aggregation::kMax ? "max" : "mean"},
          {"alpha", c.alpha},
          {"alpha_grid", c.alpha_grid.empty() ? json(nullptr) : json(c.alpha_grid)},
          {"methods", std::move(methods)},
          {"seed", c.seed}};
}

}  // namespace

std::string serialize_config(const PipelineConfig& config) {
  return config_json(config).dump(2) + "\n";
}

PipelineConfig load_config(const fs::path& path) { return parse_config(detail::read_file(path)); }

namespace {

bool path_safe(const std::string& id) {
  if (id.empty() || id == "." || id == "..") return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == '.';
  });
}

fs::path resolve(const fs::path& base, const json& v) {
  const fs::path p = v.get<std::string>();
  return p.is_absolute() ? p : base / p;
}

std::vector<std::string> strings(const json& v) { return v.get<std::vector<std::string>>(); }

SceneManifest parse_scene(const json& j, const fs::path& base) {
  SceneManifest m;
  if (!j.is_object()) throw InputError("expected a scene object");
  m.scene_id = j.at("scene_id").get<std::string>();
  if (!path_safe(m.scene_id)) {
    throw InputError("scene id '" + m.scene_id + "' must use only [A-Za-z0-9_.-]");
  }
  for (const auto& [key, v] : j.items()) {
    if (key == "scene_id") {
      continue;
    } else if (key == "point_cloud") {
      m.point_cloud = resolve(base, v);
    } else if (key == "gt_rooms") {
      m.gt_rooms = resolve(base, v);
    } else if (key == "detections") {
      m.detections = resolve(base, v);
    } else if (key == "view_embeddings") {
      m.view_embeddings = resolve(base, v);
    } else if (key == "room_embeddings") {
      for (const auto& [room, p] : v.items()) m.room_embeddings[room] = resolve(base, p);
    } else if (key == "label_embeddings") {
      m.label_embeddings = resolve(base, v);
    } else if (key == "instruction_embeddings") {
      m.instruction_embeddings = resolve(base, v);
    } else if (key == "instructions") {
      std::set<std::string> ids;
      for (const json& inst : v) {
        InstructionTruth t;
        t.id = inst.at("id").get<std::string>();
        if (inst.contains("text")) t.text = inst["text"].get<std::string>();
        if (inst.contains("true_rooms")) t.true_rooms = strings(inst["true_rooms"]);
        if (inst.contains("gt_room_types")) t.gt_room_types = strings(inst["gt_room_types"]);
        if (!ids.insert(t.id).second) throw InputError("duplicate instruction '" + t.id + "'");
        m.instructions.push_back(std::move(t));
      }
    } else if (key == "prediction_sets") {
      for (const auto& [method, p] : v.items()) {
        if (method == "acp" || method == "cp") {
          throw InputError("imported prediction sets may not be named '" + method + "'");
        }
        m.prediction_sets[method] = resolve(base, p);
      }
    } else {
      throw InputError("unknown key '" + key + "'");
    }
  }
  if (m.point_cloud.empty()) throw InputError("missing point_cloud");
  return m;
}

}  // namespace

PipelineInputs parse_manifests(const std::string& text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("manifest: malformed JSON: ") + e.what());
  }
  PipelineInputs in;
  const json* scenes = nullptr;
  json single = json::array();
  try {
    if (doc.is_object() && doc.contains("scenes")) {
      for (const auto& [key, v] : doc.items()) {
        if (key == "calibration_records") {
          in.calibration_records = resolve(base_dir, v);
        } else if (key == "validation_records") {
          in.validation_records = resolve(base_dir, v);
        } else if (key != "scenes") {
          throw InputError("manifest: unknown key '" + key + "'");
        }
      }
      scenes = &doc["scenes"];
    } else {
      single.push_back(doc);
      scenes = &single;
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("manifest: ") + e.what());
  }
  if (!scenes->is_array() || scenes->empty()) throw InputError("manifest: no scenes");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < scenes->size(); ++i) {
    try {
      in.scenes.push_back(parse_scene((*scenes)[i], base_dir));
    } catch (const json::exception& e) {
      throw InputError("manifest scene " + std::to_string(i) + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError("manifest scene " + std::to_string(i) + ": " + e.what());
    }
    if (!ids.insert(in.scenes.back().scene_id).second) {
      throw InputError("manifest: duplicate scene id '" + in.scenes.back().scene_id + "'");
    }
  }
  return in;
}

PipelineInputs load_manifests(const fs::path& path) {
  return parse_manifests(detail::read_file(path), path.parent_path());
}

std::size_t RunReport::failed_scenes() const {
  return static_cast<std::size_t>(
      std::count_if(scenes.begin(), scenes.end(), [](const SceneResult& s) { return !s.ok; }));
}

namespace {

std::string digest_of(const fs::path& path) { return sha256_file(path); }

std::vector<float> to_floats(const Embedding& e) {
  std::vector<float> out;
  out.reserve(e.dim());
  for (double v : e.values()) out.push_back(static_cast<float>(v));
  return out;
}

std::map<std::string, CalibrationArtifact> calibrate_all(const PipelineConfig& config,
                                                         const PipelineInputs& inputs,
                                                         RunReport& report,
                                                         const fs::path& out_dir) {
  std::map<std::string, CalibrationArtifact> out;
  if (config.methods.empty()) {
    report.calibration_skipped = "no methods configured";
    return out;
  }
  if (!inputs.calibration_records) {
    report.calibration_skipped = "no calibration records";
    return out;
  }
  RecordFormat format;
  format.temperature = config.temperature;
  const std::vector<LabeledScoreRecord> cal_records =
      load_score_records(*inputs.calibration_records, format);
  report.calibration_digests["calibration_records"] = digest_of(*inputs.calibration_records);

  std::vector<LabeledScoreRecord> val_records;
  if (!config.alpha_grid.empty()) {
    if (!inputs.validation_records) {
      throw InputError("alpha_grid needs validation records in the manifest");
    }
    val_records = load_score_records(*inputs.validation_records, format);
    report.calibration_digests["validation_records"] = digest_of(*inputs.validation_records);
  }

  for (Method m : config.methods) {
    CalibrationArtifact a;
    a.method = m;
    const CalibrationSet cal = build_calibration_set(cal_records, m);
    a.scores = cal.scores;
    a.alpha = config.alpha;
    if (!config.alpha_grid.empty()) {
      AlphaSearch search = optimize_alpha(val_records, cal, config.alpha_grid);
      a.alpha = search.alpha_star;
      a.table = std::move(search.table);
    }
    a.q_hat = conformal_quantile(cal, a.alpha);
    const std::string name(to_string(m));
    save_calibration(a, out_dir / ("calibration_" + name + ".json"));
    out.emplace(name, std::move(a));
  }
  return out;
}

json slices_json(const SliceSelection& s) {
  return {{"selected_indices", s.selected_indices},
          {"occupied_counts", s.occupied_counts},
          {"reference_count", s.reference_count}};
}

void process_scene(const PipelineConfig& config, const SceneManifest& m,
                   const std::map<std::string, CalibrationArtifact>& calibration,
                   const std::string& calibration_skipped, const fs::path& dir,
                   SceneResult& res) {
  fs::create_directories(dir);

  // grid_geometry
  res.digests["point_cloud"] = digest_of(m.point_cloud);
  const PointCloud cloud = read_point_cloud(m.point_cloud);
  const BorderMaps maps = build_border_maps(cloud, config.cell_size, config.border);
  write_grid(maps.density, dir / "density");
  write_grid(maps.border, dir / "border");
  write_grid(maps.combined, dir / "combined");
  write_pgm(maps.combined, dir / "combined.pgm");
  detail::write_file(dir / "slices.json", slices_json(maps.selection).dump(2) + "\n");
  res.selected_slices = maps.selection.m();

  // room_segmenter
  std::vector<RoomPolygon> rooms;
  if (m.detections) {
    res.digests["detections"] = digest_of(*m.detections);
    rooms = import_room_polygons(*m.detections);
  } else {
    BaselineSegmenterParams params;
    params.wall_threshold = config.wall_threshold;
    rooms = segment_rooms_baseline(maps.combined, params);
  }
  export_room_polygons(rooms, dir / "rooms.json");
  res.rooms_segmented = rooms.size();

  std::vector<RoomPolygon> gt;
  if (m.gt_rooms) {
    res.digests["gt_rooms"] = digest_of(*m.gt_rooms);
    gt = import_room_polygons(*m.gt_rooms);
    res.segmentation = segmentation_metrics(rooms, gt, maps.combined.spec());
  } else {
    res.segmentation_skipped = "no ground-truth rooms";
  }

  // snapshot_planner
  std::vector<RoomPoses> poses;
  for (const RoomPolygon& r : rooms) {
    poses.push_back({r.id, plan_camera_poses(room_box_from_polygon(r, config.z_c), config.n_views)});
  }
  export_poses(poses, dir / "poses.json");

  // scoring
  std::map<std::string, std::vector<Embedding>> views;
  if (m.view_embeddings) {
    res.digests["view_embeddings"] = digest_of(*m.view_embeddings);
    for (auto& [room, v] : group_views_by_room(read_emb1(*m.view_embeddings))) {
      views[room] = std::move(v);
    }
  }
  for (const auto& [room, path] : m.room_embeddings) {
    res.digests["room_embeddings/" + room] = digest_of(path);
    std::vector<Embedding> rows = to_embeddings(read_emb1(path));
    std::vector<Embedding>& dst = views[room];
    dst.insert(dst.end(), rows.begin(), rows.end());
  }
  if (views.empty()) {
    res.classification_skipped = "no view embeddings";
    res.selection_skipped = "no view embeddings";
    return;
  }
  std::vector<RepresentativeSet> reps;
  EmbeddingTable rep_table;
  for (const auto& [room, v] : views) {
    reps.push_back(kmeans_representatives(room, v, config.k_reps, config.seed));
    for (std::size_t i = 0; i < reps.back().k(); ++i) {
      rep_table.append(room + "/rep_" + std::to_string(i), to_floats(reps.back().representatives[i]));
    }
  }
  write_emb1(rep_table, dir / "representatives.emb1");

  std::map<std::string, std::string> gt_labels;
  for (const RoomPolygon& r : gt) {
    if (r.label) gt_labels[r.id] = *r.label;
  }
  if (!m.label_embeddings) {
    res.classification_skipped = "no label embeddings";
  } else {
    res.digests["label_embeddings"] = digest_of(*m.label_embeddings);
    const EmbeddingTable table = read_emb1(*m.label_embeddings);
    const std::vector<Embedding> rows = to_embeddings(table);
    std::vector<LabelPrompt> prompts;
    for (std::size_t i = 0; i < rows.size(); ++i) prompts.push_back({table.ids[i], rows[i]});
    json out = json::array();
    for (const RepresentativeSet& room : reps) {
      auto it = gt_labels.find(room.room_id);
      if (it == gt_labels.end()) continue;
      RoomClassification c = classify_room(room, prompts, config.temperature, config.aggregation);
      out.push_back({{"room_id", c.room_id},
                     {"predicted", c.predicted},
                     {"truth", it->second},
                     {"class_scores", c.class_scores}});
      res.class_truth.push_back(it->second);
      res.class_predicted.push_back(std::move(c.predicted));
      res.class_scores.push_back(std::move(c.class_scores));
    }
    if (res.class_truth.empty()) {
      res.classification_skipped = "no labeled ground-truth rooms with embeddings";
    } else {
      detail::write_file(dir / "classification.json", out.dump(2) + "\n");
      res.classification = classification_metrics(res.class_predicted, res.class_truth,
                                                  table.ids, res.class_scores);
    }
  }

  // conformal
  if (m.instructions.empty()) {
    res.selection_skipped = "no instructions";
    return;
  }
  if (!m.instruction_embeddings) {
    res.selection_skipped = "no instruction embeddings";
    return;
  }
  res.digests["instruction_embeddings"] = digest_of(*m.instruction_embeddings);
  const EmbeddingTable inst_table = read_emb1(*m.instruction_embeddings);
  const std::vector<Embedding> inst_rows = to_embeddings(inst_table);
  for (const InstructionTruth& inst : m.instructions) {
    auto it = std::find(inst_table.ids.begin(), inst_table.ids.end(), inst.id);
    if (it == inst_table.ids.end()) {
      throw InputError("instruction '" + inst.id + "' has no embedding");
    }
    LabeledScoreRecord rec;
    rec.dist = room_scores(inst_rows[static_cast<std::size_t>(it - inst_table.ids.begin())], reps,
                           config.temperature, config.aggregation);
    rec.dist.instruction_id = inst.id;
    rec.dist.scene_id = m.scene_id;
    rec.instruction = inst.text;
    rec.true_rooms = inst.true_rooms;
    rec.gt_room_types = inst.gt_room_types;
    rec.validate();
    res.scored.push_back(std::move(rec));
  }
  save_score_records(res.scored, dir / "scores.json");

  for (const auto& [name, artifact] : calibration) {
    std::vector<PredictionSet> sets;
    for (const LabeledScoreRecord& rec : res.scored) {
      sets.push_back(artifact.method == Method::kAcp
                         ? acp_prediction_set(rec.dist, artifact.q_hat, artifact.alpha)
                         : cp_prediction_set(rec.dist, artifact.q_hat, artifact.alpha));
    }
    export_prediction_sets(sets, dir / ("sets_" + name + ".json"));
    res.sets[name] = std::move(sets);
  }
  for (const auto& [name, path] : m.prediction_sets) {
    res.digests["prediction_sets/" + name] = digest_of(path);
    res.sets[name] = import_prediction_sets(path, res.scored);
  }
  if (res.sets.empty()) res.selection_skipped = calibration_skipped;
}

void aggregate(RunReport& report) {
  double ap = 0.0, miou = 0.0;
  std::size_t seg_scenes = 0;
  std::vector<std::string> predicted, truth;
  std::vector<std::map<std::string, double>> scores;
  std::set<std::string> labels;
  std::vector<LabeledScoreRecord> sel_truth;
  std::vector<std::pair<std::string, std::vector<PredictionSet>>> sel_sets;
  std::set<std::string> common_methods;
  bool first_sel = true;

  for (const SceneResult& s : report.scenes) {
    if (!s.ok) continue;
    if (s.segmentation) {
      ap += s.segmentation->ap50;
      miou += s.segmentation->miou;
      ++seg_scenes;
    }
    if (s.classification) {
      predicted.insert(predicted.end(), s.class_predicted.begin(), s.class_predicted.end());
      truth.insert(truth.end(), s.class_truth.begin(), s.class_truth.end());
      scores.insert(scores.end(), s.class_scores.begin(), s.class_scores.end());
      for (const auto& cs : s.class_scores) {
        for (const auto& [label, v] : cs) labels.insert(label);
      }
    }
    if (!s.sets.empty()) {
      std::set<std::string> names;
      for (const auto& [name, v] : s.sets) names.insert(name);
      if (first_sel) {
        common_methods = names;
        first_sel = false;
      } else {
        std::set<std::string> keep;
        std::set_intersection(common_methods.begin(), common_methods.end(), names.begin(),
                              names.end(), std::inserter(keep, keep.end()));
        common_methods = std::move(keep);
      }
    }
  }

  if (seg_scenes > 0) {
    const auto n = static_cast<double>(seg_scenes);
    report.segmentation = SegmentationSummary{ap / n, miou / n, seg_scenes};
  } else {
    report.segmentation_skipped = "no scene produced segmentation metrics";
  }
  if (!truth.empty()) {
    const std::vector<std::string> label_set(labels.begin(), labels.end());
    report.classification = classification_metrics(predicted, truth, label_set, scores);
  } else {
    report.classification_skipped = "no scene produced classifications";
  }

  if (common_methods.empty()) {
    report.selection_skipped = "no scene produced prediction sets";
    return;
  }
  // acp and cp first, then imported methods by name.
  std::vector<std::string> order;
  for (const char* m : {"acp", "cp"}) {
    if (common_methods.count(m)) order.emplace_back(m);
  }
  for (const std::string& m : common_methods) {
    if (m != "acp" && m != "cp") order.push_back(m);
  }
  for (const std::string& m : order) sel_sets.emplace_back(m, std::vector<PredictionSet>{});
  for (const SceneResult& s : report.scenes) {
    if (!s.ok || s.sets.empty()) continue;
    sel_truth.insert(sel_truth.end(), s.scored.begin(), s.scored.end());
    for (auto& [name, sets] : sel_sets) {
      const auto& src = s.sets.at(name);
      sets.insert(sets.end(), src.begin(), src.end());
    }
  }
  report.selection = evaluate_selection(sel_truth, sel_sets);
}

json classification_json(const ClassificationReport& r) {
  json per_class = json::array();
  for (const ClassMetrics& c : r.per_class) {
    per_class.push_back({{"label", c.label},
                         {"support", c.support},
                         {"true_positives", c.true_positives},
                         {"false_positives", c.false_positives},
                         {"false_negatives", c.false_negatives},
                         {"precision", c.precision},
                         {"recall", c.recall},
                         {"f1", c.f1},
                         {"average_precision", c.average_precision}});
  }
  return {{"precision", r.precision},
          {"recall", r.recall},
          {"f1_weighted", r.f1_weighted},
          {"map", r.map},
          {"per_class", std::move(per_class)}};
}

json segmentation_json(const SegmentationReport& r) {
  json matching = json::array();
  for (const RoomMatch& m : r.matching) {
    matching.push_back({{"pred_id", m.pred_id},
                        {"gt_id", m.gt_id.empty() ? json(nullptr) : json(m.gt_id)},
                        {"iou", m.iou},
                        {"true_positive", m.true_positive}});
  }
  json per_room = json::array();
  for (const GtRoomIou& g : r.per_room) {
    per_room.push_back({{"gt_id", g.gt_id},
                        {"pred_id", g.pred_id ? json(*g.pred_id) : json(nullptr)},
                        {"iou", g.iou}});
  }
  return {{"ap50", r.ap50}, {"miou", r.miou}, {"matching", std::move(matching)},
          {"per_room", std::move(per_room)}};
}

json or_null(bool present, json value) { return present ? std::move(value) : json(nullptr); }
json reason(const std::string& why) { return why.empty() ? json(nullptr) : json(why); }

json scene_json(const SceneResult& s) {
  json j = {{"scene_id", s.scene_id}, {"status", s.ok ? "ok" : "failed"},
            {"error", reason(s.error)}, {"digests", s.digests}};
  if (!s.ok) return j;
  j["selected_slices"] = s.selected_slices;
  j["rooms_segmented"] = s.rooms_segmented;
  j["segmentation"] = or_null(s.segmentation.has_value(),
                              s.segmentation ? segmentation_json(*s.segmentation) : json());
  j["segmentation_skipped"] = reason(s.segmentation_skipped);
  j["classification"] = or_null(s.classification.has_value(),
                                s.classification ? classification_json(*s.classification) : json());
  j["classification_skipped"] = reason(s.classification_skipped);
  if (s.sets.empty()) {
    j["selection"] = nullptr;
  } else {
    json methods = json::object();
    for (const auto& [name, sets] : s.sets) {
      json rows = json::array();
      for (const PredictionSet& p : sets) {
        const auto it = std::find_if(s.scored.begin(), s.scored.end(), [&](const auto& r) {
          return r.dist.instruction_id == p.instruction_id;
        });
        const double iou = it == s.scored.end() ? 0.0 : set_iou(p.rooms, it->true_rooms);
        rows.push_back({{"instruction_id", p.instruction_id},
                        {"rooms", p.rooms},
                        {"k", p.k},
                        {"q_hat", p.q_hat},
                        {"alpha", p.alpha},
                        {"iou", iou}});
      }
      methods[name] = std::move(rows);
    }
    j["selection"] = std::move(methods);
  }
  j["selection_skipped"] = reason(s.selection_skipped);
  return j;
}

}  // namespace

RunReport run_pipeline(const PipelineConfig& config, const PipelineInputs& inputs,
                       const fs::path& out_dir) {
  config.validate();
  if (inputs.scenes.empty()) throw InputError("no scenes to process");
  fs::create_directories(out_dir);
  RunReport report;
  report.config = config;
  const auto calibration = calibrate_all(config, inputs, report, out_dir);
  report.calibration = calibration;

  for (const SceneManifest& m : inputs.scenes) {
    SceneResult res;
    res.scene_id = m.scene_id;
    try {
      process_scene(config, m, calibration, report.calibration_skipped,
                    out_dir / "scenes" / m.scene_id, res);
      res.ok = true;
    } catch (const std::exception& e) {
      SceneResult failed;
      failed.scene_id = m.scene_id;
      failed.error = e.what();
      failed.digests = std::move(res.digests);
      res = std::move(failed);
    }
    report.scenes.push_back(std::move(res));
  }
  aggregate(report);
  return report;
}

std::string report_json(const RunReport& r) {
  json calibration = json::object();
  for (const auto& [name, a] : r.calibration) {
    calibration[name] = {{"alpha", a.alpha}, {"q_hat", a.q_hat}, {"n", a.n()},
                         {"alpha_grid_size", a.table.size()}};
  }
  json scenes = json::array();
  for (const SceneResult& s : r.scenes) scenes.push_back(scene_json(s));

  json summary = {
      {"scenes_total", r.scenes.size()},
      {"scenes_failed", r.failed_scenes()},
      {"segmentation", r.segmentation ? json{{"ap50", r.segmentation->ap50},
                                             {"miou", r.segmentation->miou},
                                             {"scenes", r.segmentation->scenes}}
                                      : json(nullptr)},
      {"segmentation_skipped", reason(r.segmentation_skipped)},
      {"classification",
       r.classification ? classification_json(*r.classification) : json(nullptr)},
      {"classification_skipped", reason(r.classification_skipped)},
      {"selection",
       r.selection ? json::parse(selection_report_json(*r.selection)) : json(nullptr)},
      {"selection_skipped", reason(r.selection_skipped)}};

  json inputs = json(r.calibration_digests);
  for (const SceneResult& s : r.scenes) {
    for (const auto& [role, d] : s.digests) inputs[s.scene_id + "/" + role] = d;
  }
  json doc = {{"config", config_json(r.config)},
              {"calibration", r.calibration.empty() ? json(nullptr) : calibration},
              {"calibration_skipped", reason(r.calibration_skipped)},
              {"scenes", std::move(scenes)},
              {"summary", std::move(summary)},
              {"provenance",
               {{"config_sha256", sha256_hex(serialize_config(r.config))},
                {"inputs", std::move(inputs)}}}};
  return doc.dump(2) + "\n";
}

void write_run_report(const RunReport& report, const fs::path& out_dir) {
  detail::write_file(out_dir / "report.json", report_json(report));
  if (report.selection) {
    detail::write_file(out_dir / "selection.csv", selection_report_csv(*report.selection));
  }
  for (const auto& [name, a] : report.calibration) {
    if (!a.table.empty()) {
      detail::write_file(out_dir / ("alpha_sweep_" + name + ".csv"), alpha_sweep_csv(a.table));
    }
  }
}

}  // namespace roomscope
