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

#ifndef ROOMSCOPE_SELECTION_IO_HPP_
#define ROOMSCOPE_SELECTION_IO_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roomscope/conformal.hpp"
#include "roomscope/room_scores.hpp"

namespace roomscope {

enum class ScoreKind { kProbabilities, kRawSimilarities };

struct RecordFormat {
  // Unset: the document's "score_kind" field decides, defaulting to
  // probabilities.
  std::optional<ScoreKind> kind;
  double temperature = kDefaultTemperature;  // softmax temperature for raw scores
  bool require_truth = true;
};

// {"score_kind":"probabilities"|"raw",
//  "records":[{"instruction":str,"instruction_id":str,"scene_id":str,
//              "scores":{room_id:float},"true_rooms":[room_id],
//              "gt_room_types":[str]?}]}
// Raw scores are turned into f by softmax on load. Probabilities summing to
// 1 within 1e-6 are renormalized; anything further off is rejected. Errors
// name the record index.
std::vector<LabeledScoreRecord> parse_score_records(const std::string& text,
                                                    const RecordFormat& format = {});
std::vector<LabeledScoreRecord> load_score_records(const std::filesystem::path& path,
                                                   const RecordFormat& format = {});

// Always written as probabilities.
std::string serialize_score_records(std::span<const LabeledScoreRecord> records);
void save_score_records(std::span<const LabeledScoreRecord> records,
                        const std::filesystem::path& path);

// {"sets":[{"instruction_id","scene_id","method","alpha","q_hat","rooms":[...]}]}
std::string serialize_prediction_sets(std::span<const PredictionSet> sets);
void export_prediction_sets(std::span<const PredictionSet> sets,
                            const std::filesystem::path& path);

// Imported sets carry method kImported; the file's method name is kept in
// `source`. With a non-empty `reference`, every set must name a known
// (scene, instruction) pair and only rooms present in its scores.
std::vector<PredictionSet> parse_prediction_sets(
    const std::string& text, std::span<const LabeledScoreRecord> reference = {});
std::vector<PredictionSet> import_prediction_sets(
    const std::filesystem::path& path, std::span<const LabeledScoreRecord> reference = {});

struct CalibrationArtifact {
  Method method = Method::kAcp;
  double alpha = kDefaultAlpha;  // alpha in use (alpha* after a grid search)
  double q_hat = 0.0;
  std::vector<double> scores;          // calibration scores, input order
  std::vector<AlphaEvaluation> table;  // empty without a grid search

  [[nodiscard]] std::size_t n() const { return scores.size(); }
  [[nodiscard]] CalibrationSet calibration_set() const { return {scores, method}; }
};

std::string serialize_calibration(const CalibrationArtifact& artifact);
CalibrationArtifact parse_calibration(const std::string& text);
void save_calibration(const CalibrationArtifact& artifact, const std::filesystem::path& path);
// Throws InputError("calibrate first: ...") when the file does not exist.
CalibrationArtifact load_calibration(const std::filesystem::path& path);

// One row per instruction id; each method column is the mean set IoU over the
// scenes the instruction appears in.
struct InstructionRow {
  std::string instruction_id;
  std::string instruction;
  std::vector<std::string> gt_room_types;
  std::map<std::string, double> rm_iou;  // by method name
};

struct SelectionReport {
  std::vector<std::string> methods;  // column order
  std::vector<InstructionRow> rows;  // first-appearance order in truth
  std::map<std::string, double> average;
};

// Every set must match a truth record and every method must cover every
// truth record; errors name the missing entry.
SelectionReport evaluate_selection(
    std::span<const LabeledScoreRecord> truth,
    const std::vector<std::pair<std::string, std::vector<PredictionSet>>>& sets_by_method);

std::string selection_report_json(const SelectionReport& report);
std::string selection_report_csv(const SelectionReport& report);
// alpha,q_hat,mean_iou,coverage,mean_set_size
std::string alpha_sweep_csv(std::span<const AlphaEvaluation> table);

// Shortest round-trip decimal form used by every text output.
std::string format_number(double value);
std::string csv_field(const std::string& text);

}  // namespace roomscope

#endif  // ROOMSCOPE_SELECTION_IO_HPP_
