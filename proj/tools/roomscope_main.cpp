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

// roomscope command line front end.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "roomscope/border_map.hpp"
#include "roomscope/conformal.hpp"
#include "roomscope/embedding_io.hpp"
#include "roomscope/error.hpp"
#include "roomscope/grid_io.hpp"
#include "roomscope/kmeans.hpp"
#include "roomscope/pipeline.hpp"
#include "roomscope/point_cloud_io.hpp"
#include "roomscope/room_io.hpp"
#include "roomscope/room_scores.hpp"
#include "roomscope/segmentation_metrics.hpp"
#include "roomscope/segmenter.hpp"
#include "roomscope/selection_io.hpp"
#include "roomscope/snapshot.hpp"
#include "roomscope/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace roomscope;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitInput = 2;

// Flag values that override the config file.
struct Overrides {
  std::string config_path;
  std::optional<double> cell_size;
  std::optional<std::size_t> n_slices;
  std::optional<double> gamma;
  std::optional<double> delta_b;
  std::optional<double> delta_t;
  std::optional<double> merge_fraction;
  std::optional<double> wall_threshold;
  std::optional<std::size_t> n_views;
  std::optional<double> z_c;
  std::optional<std::size_t> k_reps;
  std::optional<double> temperature;
  std::optional<double> alpha;
  std::optional<std::string> alpha_grid;
  std::optional<std::string> method;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
};

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error("cannot write '" + path.string() + "'");
}

std::vector<double> parse_alpha_grid(const std::string& text) {
  if (text == "default") return default_alpha_grid();
  std::vector<double> grid;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      grid.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("--alpha-grid: cannot parse '" + item + "'");
    }
  }
  if (grid.empty()) throw InputError("--alpha-grid: empty grid");
  return grid;
}

PipelineConfig resolve_config(const Overrides& o) {
  PipelineConfig c = o.config_path.empty() ? PipelineConfig{} : load_config(o.config_path);
  if (o.cell_size) c.cell_size = *o.cell_size;
  if (o.n_slices) c.border.n_slices = *o.n_slices;
  if (o.gamma) c.border.gamma = *o.gamma;
  if (o.delta_b) c.border.delta_b = *o.delta_b;
  if (o.delta_t) c.border.delta_t = *o.delta_t;
  if (o.merge_fraction) c.border.merge_fraction = *o.merge_fraction;
  if (o.wall_threshold) c.wall_threshold = *o.wall_threshold;
  if (o.n_views) c.n_views = *o.n_views;
  if (o.z_c) c.z_c = *o.z_c;
  if (o.k_reps) c.k_reps = *o.k_reps;
  if (o.temperature) c.temperature = *o.temperature;
  if (o.alpha) c.alpha = *o.alpha;
  if (o.alpha_grid) c.alpha_grid = parse_alpha_grid(*o.alpha_grid);
  if (o.method) c.methods = {method_from_string(*o.method)};
  if (o.seed) c.seed = *o.seed;
  c.validate();
  return c;
}

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "Pipeline config JSON");
  cmd->add_option("--out", o.out, "Output directory");
}

void add_grid_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--cell-size", o.cell_size, "Grid resolution in metres");
  cmd->add_option("--n-slices", o.n_slices, "Number of z slices");
  cmd->add_option("--gamma", o.gamma, "Density weight of the combined map");
  cmd->add_option("--delta-b", o.delta_b, "Lower slice-area bound");
  cmd->add_option("--delta-t", o.delta_t, "Upper slice-area bound");
  cmd->add_option("--merge-fraction", o.merge_fraction, "Border consensus fraction");
}

void add_score_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--k-reps", o.k_reps, "Representatives per room");
  cmd->add_option("--temperature", o.temperature, "Softmax temperature");
  cmd->add_option("--seed", o.seed, "k-means seed");
}

void add_selection_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--alpha", o.alpha, "Error rate");
  cmd->add_option("--alpha-grid", o.alpha_grid, "Comma-separated alphas, or 'default'");
  cmd->add_option("--method", o.method, "acp or cp")->check(CLI::IsMember({"acp", "cp"}));
}

Method single_method(const PipelineConfig& c) {
  if (c.methods.size() != 1) throw InputError("give exactly one --method");
  return c.methods.front();
}

OccupancyGrid combined_from(const fs::path& input, const PipelineConfig& c) {
  const std::string ext = input.extension().string();
  if (ext == ".json") return read_grid(input);
  return build_border_maps(read_point_cloud(input), c.cell_size, c.border).combined;
}

int cmd_borders(const fs::path& cloud_path, const Overrides& o) {
  const PipelineConfig c = resolve_config(o);
  const BorderMaps maps = build_border_maps(read_point_cloud(cloud_path), c.cell_size, c.border);
  const fs::path out = o.out;
  write_grid(maps.density, out / "density");
  write_grid(maps.border, out / "border");
  write_grid(maps.combined, out / "combined");
  write_pgm(maps.combined, out / "combined.pgm");
  write_text(out / "slices.json",
             json{{"selected_indices", maps.selection.selected_indices},
                  {"occupied_counts", maps.selection.occupied_counts},
                  {"reference_count", maps.selection.reference_count}}
                     .dump(2) + "\n");
  std::cout << "selected " << maps.selection.m() << " of " << c.border.n_slices
            << " slices; grid " << maps.combined.spec().width << "x"
            << maps.combined.spec().height << "\n";
  return kExitOk;
}

int cmd_segment(const fs::path& input, const std::string& gt_path, const Overrides& o) {
  const PipelineConfig c = resolve_config(o);
  const OccupancyGrid combined = combined_from(input, c);
  BaselineSegmenterParams params;
  params.wall_threshold = c.wall_threshold;
  const std::vector<RoomPolygon> rooms = segment_rooms_baseline(combined, params);
  const fs::path out = o.out;
  export_room_polygons(rooms, out / "rooms.json");
  std::cout << rooms.size() << " rooms\n";
  if (!gt_path.empty()) {
    const std::vector<RoomPolygon> gt = import_room_polygons(gt_path);
    const SegmentationReport r = segmentation_metrics(rooms, gt, combined.spec());
    write_text(out / "segmentation.json",
               json{{"ap50", r.ap50}, {"miou", r.miou}}.dump(2) + "\n");
    std::cout << "AP50 " << format_number(r.ap50) << "  mIoU " << format_number(r.miou) << "\n";
  }
  return kExitOk;
}

int cmd_plan_views(const fs::path& rooms_path, const Overrides& o) {
  const PipelineConfig c = resolve_config(o);
  std::vector<RoomPoses> poses;
  for (const RoomPolygon& r : import_room_polygons(rooms_path)) {
    poses.push_back({r.id, plan_camera_poses(room_box_from_polygon(r, c.z_c), c.n_views)});
  }
  export_poses(poses, fs::path(o.out) / "poses.json");
  std::cout << poses.size() << " rooms x " << c.n_views << " views\n";
  return kExitOk;
}

int cmd_score(const fs::path& views_path, const fs::path& inst_path, const std::string& scene_id,
              const std::string& labels_path, const Overrides& o) {
  const PipelineConfig c = resolve_config(o);
  std::vector<RepresentativeSet> reps;
  for (const auto& [room, views] : group_views_by_room(read_emb1(views_path))) {
    reps.push_back(kmeans_representatives(room, views, c.k_reps, c.seed));
  }
  const fs::path out = o.out;
  const EmbeddingTable inst = read_emb1(inst_path);
  const std::vector<Embedding> rows = to_embeddings(inst);
  std::vector<LabeledScoreRecord> records;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    LabeledScoreRecord rec;
    rec.dist = room_scores(rows[i], reps, c.temperature, c.aggregation);
    rec.dist.instruction_id = inst.ids[i];
    rec.dist.scene_id = scene_id;
    records.push_back(std::move(rec));
  }
  save_score_records(records, out / "scores.json");
  if (!labels_path.empty()) {
    const EmbeddingTable labels = read_emb1(labels_path);
    const std::vector<Embedding> lrows = to_embeddings(labels);
    std::vector<LabelPrompt> prompts;
    for (std::size_t i = 0; i < lrows.size(); ++i) prompts.push_back({labels.ids[i], lrows[i]});
    json arr = json::array();
    for (const RepresentativeSet& r : reps) {
      const RoomClassification rc = classify_room(r, prompts, c.temperature, c.aggregation);
      arr.push_back({{"room_id", rc.room_id},
                     {"predicted", rc.predicted},
                     {"class_scores", rc.class_scores}});
    }
    write_text(out / "classification.json", arr.dump(2) + "\n");
  }
  std::cout << records.size() << " instructions x " << reps.size() << " rooms\n";
  return kExitOk;
}

RecordFormat record_format(const PipelineConfig& c, bool raw, bool require_truth) {
  RecordFormat f;
  if (raw) f.kind = ScoreKind::kRawSimilarities;
  f.temperature = c.temperature;
  f.require_truth = require_truth;
  return f;
}

int cmd_calibrate(const fs::path& records_path, const std::string& validation_path, bool raw,
                  const Overrides& o) {
  PipelineConfig c = resolve_config(o);
  if (!o.method) c.methods = {Method::kAcp};
  const Method method = single_method(c);
  const auto records = load_score_records(records_path, record_format(c, raw, true));
  if (records.empty()) throw InputError("calibrate: no records in '" + records_path.string() + "'");
  const CalibrationSet cal = build_calibration_set(records, method);

  CalibrationArtifact a;
  a.method = method;
  a.scores = cal.scores;
  a.alpha = c.alpha;
  if (!c.alpha_grid.empty()) {
    if (validation_path.empty()) throw InputError("--alpha-grid needs --validation");
    const auto val = load_score_records(validation_path, record_format(c, raw, true));
    AlphaSearch search = optimize_alpha(val, cal, c.alpha_grid);
    a.alpha = search.alpha_star;
    a.table = std::move(search.table);
  }
  a.q_hat = conformal_quantile(cal, a.alpha);
  const fs::path out = o.out;
  save_calibration(a, out / "calibration.json");
  if (!a.table.empty()) write_text(out / "alpha_sweep.csv", alpha_sweep_csv(a.table));
  std::cout << to_string(a.method) << ": n=" << a.n() << " alpha=" << format_number(a.alpha)
            << " q_hat=" << format_number(a.q_hat) << "\n";
  return kExitOk;
}

int cmd_select(const fs::path& scores_path, const std::string& calibration_path, bool raw,
               const Overrides& o) {
  const PipelineConfig c = resolve_config(o);
  const fs::path cal_path =
      calibration_path.empty() ? fs::path(o.out) / "calibration.json" : fs::path(calibration_path);
  const CalibrationArtifact a = load_calibration(cal_path);
  if (o.method && method_from_string(*o.method) != a.method) {
    throw InputError("method mismatch: --method " + *o.method + " but the calibration is " +
                     std::string(to_string(a.method)));
  }
  const auto records = load_score_records(scores_path, record_format(c, raw, false));
  std::vector<PredictionSet> sets;
  for (const LabeledScoreRecord& r : records) {
    sets.push_back(a.method == Method::kAcp ? acp_prediction_set(r.dist, a.q_hat, a.alpha)
                                            : cp_prediction_set(r.dist, a.q_hat, a.alpha));
  }
  export_prediction_sets(sets, fs::path(o.out) / "sets.json");
  std::cout << sets.size() << " prediction sets (" << to_string(a.method) << ")\n";
  return kExitOk;
}

int cmd_evaluate(const fs::path& truth_path, const std::vector<std::string>& set_args,
                 const Overrides& o) {
  const auto truth = load_score_records(truth_path, record_format(PipelineConfig{}, false, true));
  std::vector<std::pair<std::string, std::vector<PredictionSet>>> by_method;
  for (const std::string& arg : set_args) {
    const auto eq = arg.find('=');
    std::string name;
    fs::path path = arg;
    if (eq != std::string::npos) {
      name = arg.substr(0, eq);
      path = arg.substr(eq + 1);
    }
    std::vector<PredictionSet> sets = import_prediction_sets(path, truth);
    if (name.empty()) {
      if (sets.empty()) throw InputError("'" + path.string() + "' holds no sets; name it");
      name = sets.front().source;
    }
    by_method.emplace_back(name, std::move(sets));
  }
  const SelectionReport report = evaluate_selection(truth, by_method);
  const fs::path out = o.out;
  write_text(out / "evaluation.json", selection_report_json(report));
  write_text(out / "evaluation.csv", selection_report_csv(report));
  for (const std::string& m : report.methods) {
    std::cout << m << " RmIoU " << format_number(report.average.at(m)) << "\n";
  }
  return kExitOk;
}

int cmd_pipeline(const fs::path& manifest, const Overrides& o) {
  const PipelineConfig c = resolve_config(o);
  const PipelineInputs inputs = load_manifests(manifest);
  const RunReport report = run_pipeline(c, inputs, o.out);
  write_run_report(report, o.out);
  const std::size_t failed = report.failed_scenes();
  std::cout << report.scenes.size() - failed << " of " << report.scenes.size()
            << " scenes ok\n";
  for (const SceneResult& s : report.scenes) {
    if (!s.ok) std::cerr << "scene '" << s.scene_id << "' failed: " << s.error << "\n";
  }
  return failed == 0 ? kExitOk : kExitPartial;
}

int cmd_synth(const std::string& kind, std::size_t count, const Overrides& o) {
  const fs::path out = o.out;
  const std::uint64_t seed = o.seed.value_or(7);
  if (kind == "scene") {
    SceneSynthOptions opts;
    opts.seed = seed;
    write_synthetic_scene(make_four_room_scene(opts), out);
  } else if (kind == "coverage") {
    const std::size_t n = count == 0 ? 500 : count;
    save_score_records(make_coverage_records(n, seed, {}, "cov_cal"), out / "calibration.json");
    save_score_records(make_coverage_records(4 * n, seed + 1, {}, "cov_test"), out / "test.json");
  } else if (kind == "mixed-scale") {
    const std::size_t n = count == 0 ? 200 : count;
    const MixedScaleBenchmark b = make_mixed_scale_benchmark(n, n, n, seed);
    save_score_records(b.calibration, out / "calibration.json");
    save_score_records(b.validation, out / "validation.json");
    save_score_records(b.test, out / "test.json");
  } else {
    throw InputError("synth: unknown kind '" + kind + "'");
  }
  std::cout << "wrote " << kind << " data to " << out.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Room segmentation, view planning, scoring and conformal room selection"};
  app.require_subcommand(1);
  Overrides o;
  std::string input, input2, extra, scene_id = "scene";
  std::string synth_kind;
  std::size_t synth_count = 0;
  bool raw = false;
  std::vector<std::string> set_args;
  int code = kExitOk;

  auto* borders = app.add_subcommand("borders", "Point cloud to border-enhanced density map");
  borders->add_option("cloud", input, "PLY or XYZ point cloud")->required();
  add_common(borders, o);
  add_grid_flags(borders, o);

  auto* segment = app.add_subcommand("segment", "Baseline room segmentation");
  segment->add_option("input", input, "Combined grid header (.json) or point cloud")->required();
  segment->add_option("--gt", extra, "Ground-truth rooms for AP50/mIoU");
  segment->add_option("--wall-threshold", o.wall_threshold, "Wall cut-off on the combined map");
  add_common(segment, o);
  add_grid_flags(segment, o);

  auto* plan = app.add_subcommand("plan-views", "Camera poses on each room's ellipse");
  plan->add_option("rooms", input, "Room polygons JSON")->required();
  plan->add_option("--n-views", o.n_views, "Views per room");
  plan->add_option("--z-c", o.z_c, "Camera height");
  add_common(plan, o);

  auto* score = app.add_subcommand("score", "Room scores for each instruction");
  score->add_option("--views", input, "View embeddings (EMB1, ids <room>/<view>)")->required();
  score->add_option("--instructions", input2, "Instruction embeddings (EMB1)")->required();
  score->add_option("--labels", extra, "Label prompt embeddings for room classification");
  score->add_option("--scene-id", scene_id, "Scene id written into the records");
  add_common(score, o);
  add_score_flags(score, o);

  auto* calibrate = app.add_subcommand("calibrate", "Build a calibration artifact");
  calibrate->add_option("records", input, "Labeled score records JSON")->required();
  calibrate->add_option("--validation", input2, "Validation records for --alpha-grid");
  calibrate->add_flag("--raw", raw, "Scores are raw similarities");
  calibrate->add_option("--temperature", o.temperature, "Softmax temperature for --raw");
  add_common(calibrate, o);
  add_selection_flags(calibrate, o);

  auto* select = app.add_subcommand("select", "Prediction sets from a calibration artifact");
  select->add_option("scores", input, "Score records JSON")->required();
  select->add_option("--calibration", extra, "Calibration artifact (default <out>/calibration.json)");
  select->add_flag("--raw", raw, "Scores are raw similarities");
  select->add_option("--temperature", o.temperature, "Softmax temperature for --raw");
  add_common(select, o);
  add_selection_flags(select, o);

  auto* evaluate = app.add_subcommand("evaluate", "RmIoU report over prediction sets");
  evaluate->add_option("--truth", input, "Labeled records JSON")->required();
  evaluate->add_option("--sets", set_args, "[name=]prediction-set JSON, repeatable")->required();
  add_common(evaluate, o);

  auto* pipeline = app.add_subcommand("pipeline", "Run every stage over scene manifests");
  pipeline->add_option("manifest", input, "Manifest JSON")->required();
  pipeline->add_option("--wall-threshold", o.wall_threshold, "Wall cut-off on the combined map");
  pipeline->add_option("--n-views", o.n_views, "Views per room");
  pipeline->add_option("--z-c", o.z_c, "Camera height");
  add_common(pipeline, o);
  add_grid_flags(pipeline, o);
  add_score_flags(pipeline, o);
  add_selection_flags(pipeline, o);

  auto* synth = app.add_subcommand("synth", "Write synthetic inputs");
  synth->add_option("kind", synth_kind, "scene, coverage or mixed-scale")
      ->required()
      ->check(CLI::IsMember({"scene", "coverage", "mixed-scale"}));
  synth->add_option("--count", synth_count, "Records per split");
  synth->add_option("--seed", o.seed, "Generator seed");
  synth->add_option("--out", o.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*borders) code = cmd_borders(input, o);
    if (*segment) code = cmd_segment(input, extra, o);
    if (*plan) code = cmd_plan_views(input, o);
    if (*score) code = cmd_score(input, input2, scene_id, extra, o);
    if (*calibrate) code = cmd_calibrate(input, input2, raw, o);
    if (*select) code = cmd_select(input, extra, raw, o);
    if (*evaluate) code = cmd_evaluate(input, set_args, o);
    if (*pipeline) code = cmd_pipeline(input, o);
    if (*synth) code = cmd_synth(synth_kind, synth_count, o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPartial;
  }
  return code;
}
