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

#ifndef ROOMSCOPE_PIPELINE_HPP_
#define ROOMSCOPE_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "roomscope/border_map.hpp"
#include "roomscope/classification_metrics.hpp"
#include "roomscope/conformal.hpp"
#include "roomscope/kmeans.hpp"
#include "roomscope/room_scores.hpp"
#include "roomscope/segmentation_metrics.hpp"
#include "roomscope/selection_io.hpp"
#include "roomscope/snapshot.hpp"

namespace roomscope {

struct PipelineConfig {
  double cell_size = 0.05;
  BorderParams border;
  double wall_threshold = 0.3;
  std::size_t n_views = kDefaultViews;
  double z_c = kDefaultCameraHeight;
  std::size_t k_reps = kDefaultRepresentatives;
  double temperature = kDefaultTemperature;
  Aggregation aggregation = Aggregation::kMax;
  double alpha = kDefaultAlpha;
  std::vector<double> alpha_grid;  // non-empty: alpha is chosen on validation records
  std::vector<Method> methods{Method::kAcp, Method::kCp};
  std::uint64_t seed = 0;

  // Throws InputError on any out-of-range value.
  void validate() const;
};

// Flat JSON object with the field names above ("n_slices", "delta_b",
// "delta_t", "merge_fraction" and "gamma" for the border parameters).
// Missing keys keep their defaults; unknown keys are rejected.
PipelineConfig parse_config(const std::string& text);
std::string serialize_config(const PipelineConfig& config);
PipelineConfig load_config(const std::filesystem::path& path);

struct InstructionTruth {
  std::string id;
  std::string text;
  std::vector<std::string> true_rooms;
  std::vector<std::string> gt_room_types;
};

// Paths are absolute after loading (resolved against the manifest file).
struct SceneManifest {
  std::string scene_id;
  std::filesystem::path point_cloud;
  std::optional<std::filesystem::path> gt_rooms;     // polygons with labels
  std::optional<std::filesystem::path> detections;   // imported polygons replace the baseline
  std::optional<std::filesystem::path> view_embeddings;  // ids "<room>/<view>"
  std::map<std::string, std::filesystem::path> room_embeddings;  // one file per room
  std::optional<std::filesystem::path> label_embeddings;        // ids are labels
  std::optional<std::filesystem::path> instruction_embeddings;  // ids are instruction ids
  std::vector<InstructionTruth> instructions;
  std::map<std::string, std::filesystem::path> prediction_sets;  // imported, by method name
};

struct PipelineInputs {
  std::vector<SceneManifest> scenes;
  std::optional<std::filesystem::path> calibration_records;
  std::optional<std::filesystem::path> validation_records;
};

// {"calibration_records":path?,"validation_records":path?,"scenes":[...]} or a
// single scene object. Scene ids must be unique path-safe names.
PipelineInputs parse_manifests(const std::string& text, const std::filesystem::path& base_dir);
PipelineInputs load_manifests(const std::filesystem::path& path);

struct SegmentationSummary {
  double ap50 = 0.0;  // mean over scenes with ground truth
  double miou = 0.0;
  std::size_t scenes = 0;
};

struct SceneResult {
  std::string scene_id;
  bool ok = false;
  std::string error;  // set when !ok

  std::size_t selected_slices = 0;
  std::size_t rooms_segmented = 0;

  std::optional<SegmentationReport> segmentation;
  std::string segmentation_skipped;
  std::optional<ClassificationReport> classification;
  std::string classification_skipped;
  // One labeled record per scored instruction with truth.
  std::vector<LabeledScoreRecord> scored;
  std::map<std::string, std::vector<PredictionSet>> sets;  // by method name
  std::string selection_skipped;

  // Per classified room, pooled into the run-level report.
  std::vector<std::string> class_truth;
  std::vector<std::string> class_predicted;
  std::vector<std::map<std::string, double>> class_scores;

  std::map<std::string, std::string> digests;  // input role -> sha256
};

struct RunReport {
  PipelineConfig config;
  std::map<std::string, CalibrationArtifact> calibration;  // by method name
  std::string calibration_skipped;
  std::map<std::string, std::string> calibration_digests;
  std::vector<SceneResult> scenes;

  std::optional<SegmentationSummary> segmentation;
  std::string segmentation_skipped;
  std::optional<ClassificationReport> classification;
  std::string classification_skipped;
  std::optional<SelectionReport> selection;
  std::string selection_skipped;

  [[nodiscard]] std::size_t failed_scenes() const;
};

// Runs every scene independently; a failing scene is recorded and the rest
// continue. Artifacts go to out_dir/scenes/<scene_id>/, calibration artifacts
// and reports to out_dir. Calibration input errors throw InputError.
RunReport run_pipeline(const PipelineConfig& config, const PipelineInputs& inputs,
                       const std::filesystem::path& out_dir);

// Byte-stable: no timestamps, no absolute paths.
std::string report_json(const RunReport& report);

// report.json plus selection.csv when selection ran.
void write_run_report(const RunReport& report, const std::filesystem::path& out_dir);

}  // namespace roomscope

#endif  // ROOMSCOPE_PIPELINE_HPP_
