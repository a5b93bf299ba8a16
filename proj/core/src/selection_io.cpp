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

#include "roomscope/selection_io.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "binary_io.hpp"
#include "json.hpp"
#include "roomscope/error.hpp"

namespace roomscope {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(what + ": malformed JSON: " + e.what());
  }
}

std::string record_label(std::size_t index) { return "record " + std::to_string(index); }

std::vector<std::string> string_list(const json& j) {
  std::vector<std::string> out;
  for (const json& v : j) out.push_back(v.get<std::string>());
  return out;
}

LabeledScoreRecord parse_record(const json& r, ScoreKind kind, const RecordFormat& format) {
  LabeledScoreRecord rec;
  ScoreDistribution& d = rec.dist;
  d.instruction_id = r.at("instruction_id").get<std::string>();
  d.scene_id = r.at("scene_id").get<std::string>();
  if (r.contains("instruction")) rec.instruction = r["instruction"].get<std::string>();
  const json& scores = r.at("scores");
  if (!scores.is_object() || scores.empty()) throw InputError("\"scores\" must be a non-empty object");
  std::vector<double> values;
  for (const auto& [room, value] : scores.items()) {
    d.room_ids.push_back(room);
    values.push_back(value.get<double>());
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError("non-finite score");
  }
  if (kind == ScoreKind::kRawSimilarities) {
    d.raw_similarities = values;
    d.f = softmax(values, format.temperature);
    d.temperature = format.temperature;
  } else {
    double sum = 0.0;
    for (double v : values) {
      if (v < 0.0) throw InputError("negative probability");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw InputError("scores sum to " + format_number(sum) +
                       ", not 1; load them as raw similarities instead");
    }
    if (std::abs(sum - 1.0) > kDistributionTolerance) {
      for (double& v : values) v /= sum;
    }
    d.f = std::move(values);
  }
  if (r.contains("true_rooms")) rec.true_rooms = string_list(r["true_rooms"]);
  if (r.contains("gt_room_types")) rec.gt_room_types = string_list(r["gt_room_types"]);
  rec.validate(format.require_truth);
  return rec;
}

}  // namespace

std::string format_number(double value) { return json(value).dump(); }

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<LabeledScoreRecord> parse_score_records(const std::string& text,
                                                    const RecordFormat& format) {
  const json doc = parse_json(text, "score records");
  if (!doc.is_object() || !doc.contains("records") || !doc["records"].is_array()) {
    throw InputError("score records: expected an object with a \"records\" array");
  }
  ScoreKind kind = ScoreKind::kProbabilities;
  if (format.kind) {
    kind = *format.kind;
  } else if (doc.contains("score_kind")) {
    const std::string k = doc["score_kind"].get<std::string>();
    if (k == "raw") {
      kind = ScoreKind::kRawSimilarities;
    } else if (k != "probabilities") {
      throw InputError("score records: unknown score_kind '" + k + "'");
    }
  }
  std::vector<LabeledScoreRecord> records;
  std::set<std::pair<std::string, std::string>> seen;
  const json& arr = doc["records"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    try {
      records.push_back(parse_record(arr[i], kind, format));
    } catch (const json::exception& e) {
      throw InputError(record_label(i) + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError(record_label(i) + ": " + e.what());
    }
    const ScoreDistribution& d = records.back().dist;
    if (!seen.insert({d.scene_id, d.instruction_id}).second) {
      throw InputError(record_label(i) + ": duplicate instruction '" + d.instruction_id +
                       "' in scene '" + d.scene_id + "'");
    }
  }
  return records;
}

std::vector<LabeledScoreRecord> load_score_records(const std::filesystem::path& path,
                                                   const RecordFormat& format) {
  try {
    return parse_score_records(detail::read_file(path), format);
  } catch (const InputError& e) {
    throw InputError(path.filename().string() + ": " + e.what());
  }
}

std::string serialize_score_records(std::span<const LabeledScoreRecord> records) {
  json arr = json::array();
  for (const LabeledScoreRecord& r : records) {
    json scores = json::object();
    for (std::size_t i = 0; i < r.dist.size(); ++i) scores[r.dist.room_ids[i]] = r.dist.f[i];
    json entry = {{"instruction", r.instruction},
                  {"instruction_id", r.dist.instruction_id},
                  {"scene_id", r.dist.scene_id},
                  {"scores", std::move(scores)},
                  {"true_rooms", r.true_rooms}};
    if (!r.gt_room_types.empty()) entry["gt_room_types"] = r.gt_room_types;
    arr.push_back(std::move(entry));
  }
  return json{{"score_kind", "probabilities"}, {"records", std::move(arr)}}.dump(2) + "\n";
}

void save_score_records(std::span<const LabeledScoreRecord> records,
                        const std::filesystem::path& path) {
  detail::write_file(path, serialize_score_records(records));
}

std::string serialize_prediction_sets(std::span<const PredictionSet> sets) {
  json arr = json::array();
  for (const PredictionSet& s : sets) {
    arr.push_back({{"instruction_id", s.instruction_id},
                   {"scene_id", s.scene_id},
                   {"method", s.source.empty() ? std::string(to_string(s.method)) : s.source},
                   {"alpha", s.alpha},
                   {"q_hat", s.q_hat},
                   {"rooms", s.rooms}});
  }
  return json{{"sets", std::move(arr)}}.dump(2) + "\n";
}

void export_prediction_sets(std::span<const PredictionSet> sets,
                            const std::filesystem::path& path) {
  detail::write_file(path, serialize_prediction_sets(sets));
}

std::vector<PredictionSet> parse_prediction_sets(const std::string& text,
                                                 std::span<const LabeledScoreRecord> reference) {
  const json doc = parse_json(text, "prediction sets");
  if (!doc.is_object() || !doc.contains("sets") || !doc["sets"].is_array()) {
    throw InputError("prediction sets: expected an object with a \"sets\" array");
  }
  std::map<std::pair<std::string, std::string>, const ScoreDistribution*> known;
  for (const LabeledScoreRecord& r : reference) {
    known[{r.dist.scene_id, r.dist.instruction_id}] = &r.dist;
  }
  std::vector<PredictionSet> sets;
  const json& arr = doc["sets"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    PredictionSet s;
    const std::string where = "set " + std::to_string(i);
    try {
      const json& e = arr[i];
      s.instruction_id = e.at("instruction_id").get<std::string>();
      s.scene_id = e.at("scene_id").get<std::string>();
      s.source = e.contains("method") ? e["method"].get<std::string>() : "imported";
      s.alpha = e.contains("alpha") && !e["alpha"].is_null() ? e["alpha"].get<double>() : 0.0;
      s.q_hat = e.contains("q_hat") && !e["q_hat"].is_null() ? e["q_hat"].get<double>() : 0.0;
      s.rooms = string_list(e.at("rooms"));
    } catch (const json::exception& e) {
      throw InputError(where + ": " + e.what());
    }
    s.method = Method::kImported;
    s.k = s.rooms.size();
    const std::string who = where + " (instruction '" + s.instruction_id + "', scene '" +
                            s.scene_id + "')";
    if (s.rooms.empty()) throw InputError(who + ": empty prediction set");
    if (std::set<std::string>(s.rooms.begin(), s.rooms.end()).size() != s.rooms.size()) {
      throw InputError(who + ": duplicate room");
    }
    if (!(s.alpha >= 0.0 && s.alpha <= 1.0)) throw InputError(who + ": alpha outside [0, 1]");
    if (!reference.empty()) {
      auto it = known.find({s.scene_id, s.instruction_id});
      if (it == known.end()) throw InputError(who + ": no matching score record");
      for (const std::string& room : s.rooms) {
        const auto& ids = it->second->room_ids;
        if (std::find(ids.begin(), ids.end(), room) == ids.end()) {
          throw InputError(who + ": unknown room_id '" + room + "'");
        }
      }
    }
    sets.push_back(std::move(s));
  }
  return sets;
}

std::vector<PredictionSet> import_prediction_sets(const std::filesystem::path& path,
                                                  std::span<const LabeledScoreRecord> reference) {
  try {
    return parse_prediction_sets(detail::read_file(path), reference);
  } catch (const InputError& e) {
    throw InputError(path.filename().string() + ": " + e.what());
  }
}

std::string serialize_calibration(const CalibrationArtifact& a) {
  json table = json::array();
  for (const AlphaEvaluation& e : a.table) {
    table.push_back({{"alpha", e.alpha},
                     {"q_hat", e.q_hat},
                     {"mean_iou", e.mean_iou},
                     {"coverage", e.coverage},
                     {"mean_set_size", e.mean_set_size}});
  }
  json doc = {{"method", std::string(to_string(a.method))},
              {"alpha", a.alpha},
              {"q_hat", a.q_hat},
              {"n", a.n()},
              {"table", std::move(table)},
              {"scores", a.scores}};
  return doc.dump(2) + "\n";
}

CalibrationArtifact parse_calibration(const std::string& text) {
  const json doc = parse_json(text, "calibration");
  CalibrationArtifact a;
  try {
    a.method = method_from_string(doc.at("method").get<std::string>());
    a.alpha = doc.at("alpha").get<double>();
    a.q_hat = doc.at("q_hat").get<double>();
    a.scores = doc.at("scores").get<std::vector<double>>();
    if (doc.at("n").get<std::size_t>() != a.scores.size()) {
      throw InputError("n does not match the number of scores");
    }
    for (const json& e : doc.at("table")) {
      a.table.push_back({e.at("alpha").get<double>(), e.at("q_hat").get<double>(),
                         e.at("mean_iou").get<double>(), e.at("coverage").get<double>(),
                         e.at("mean_set_size").get<double>()});
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("calibration: ") + e.what());
  }
  if (a.method == Method::kImported) throw InputError("calibration: method must be acp or cp");
  if (a.scores.empty()) throw InputError("calibration: no scores");
  return a;
}

void save_calibration(const CalibrationArtifact& artifact, const std::filesystem::path& path) {
  detail::write_file(path, serialize_calibration(artifact));
}

CalibrationArtifact load_calibration(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw InputError("calibrate first: no calibration artifact at '" + path.string() + "'");
  }
  return parse_calibration(detail::read_file(path));
}

SelectionReport evaluate_selection(
    std::span<const LabeledScoreRecord> truth,
    const std::vector<std::pair<std::string, std::vector<PredictionSet>>>& sets_by_method) {
  if (truth.empty()) throw InputError("evaluate: no truth records");
  if (sets_by_method.empty()) throw InputError("evaluate: no prediction sets");
  using Key = std::pair<std::string, std::string>;
  std::map<Key, std::size_t> truth_index;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    truth[i].validate();
    truth_index[{truth[i].dist.scene_id, truth[i].dist.instruction_id}] = i;
  }

  SelectionReport report;
  std::map<std::string, std::size_t> row_of;
  for (const LabeledScoreRecord& r : truth) {
    if (row_of.emplace(r.dist.instruction_id, report.rows.size()).second) {
      report.rows.push_back({r.dist.instruction_id, r.instruction, r.gt_room_types, {}});
    }
  }

  for (const auto& [method, sets] : sets_by_method) {
    if (std::find(report.methods.begin(), report.methods.end(), method) != report.methods.end()) {
      throw InputError("evaluate: method '" + method + "' given twice");
    }
    report.methods.push_back(method);
    std::vector<const PredictionSet*> by_truth(truth.size(), nullptr);
    for (const PredictionSet& s : sets) {
      auto it = truth_index.find({s.scene_id, s.instruction_id});
      if (it == truth_index.end()) {
        throw InputError("evaluate: missing truth entry for instruction '" + s.instruction_id +
                         "' in scene '" + s.scene_id + "'");
      }
      if (by_truth[it->second] != nullptr) {
        throw InputError("evaluate: method '" + method + "' has two sets for instruction '" +
                         s.instruction_id + "' in scene '" + s.scene_id + "'");
      }
      by_truth[it->second] = &s;
    }
    std::vector<double> sum(report.rows.size(), 0.0);
    std::vector<std::size_t> count(report.rows.size(), 0);
    for (std::size_t i = 0; i < truth.size(); ++i) {
      if (by_truth[i] == nullptr) {
        throw InputError("evaluate: method '" + method + "' has no set for instruction '" +
                         truth[i].dist.instruction_id + "' in scene '" +
                         truth[i].dist.scene_id + "'");
      }
      const std::size_t row = row_of.at(truth[i].dist.instruction_id);
      sum[row] += set_iou(by_truth[i]->rooms, truth[i].true_rooms);
      ++count[row];
    }
    double total = 0.0;
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
      const double v = sum[r] / static_cast<double>(count[r]);
      report.rows[r].rm_iou[method] = v;
      total += v;
    }
    report.average[method] = total / static_cast<double>(report.rows.size());
  }
  return report;
}

std::string selection_report_json(const SelectionReport& report) {
  json rows = json::array();
  for (const InstructionRow& r : report.rows) {
    rows.push_back({{"instruction_id", r.instruction_id},
                    {"instruction", r.instruction},
                    {"gt_room_types", r.gt_room_types},
                    {"rm_iou", r.rm_iou}});
  }
  json doc = {{"methods", report.methods}, {"rows", std::move(rows)}, {"average", report.average}};
  return doc.dump(2) + "\n";
}

std::string selection_report_csv(const SelectionReport& report) {
  std::ostringstream out;
  out << "instruction_id,instruction,gt_room_types";
  for (const std::string& m : report.methods) out << ',' << csv_field(m);
  out << '\n';
  for (const InstructionRow& r : report.rows) {
    std::string types;
    for (std::size_t i = 0; i < r.gt_room_types.size(); ++i) {
      types += (i ? ";" : "") + r.gt_room_types[i];
    }
    out << csv_field(r.instruction_id) << ',' << csv_field(r.instruction) << ','
        << csv_field(types);
    for (const std::string& m : report.methods) out << ',' << format_number(r.rm_iou.at(m));
    out << '\n';
  }
  out << "Average,,";
  for (const std::string& m : report.methods) out << ',' << format_number(report.average.at(m));
  out << '\n';
  return out.str();
}

std::string alpha_sweep_csv(std::span<const AlphaEvaluation> table) {
  std::ostringstream out;
  out << "alpha,q_hat,mean_iou,coverage,mean_set_size\n";
  for (const AlphaEvaluation& e : table) {
    out << format_number(e.alpha) << ',' << format_number(e.q_hat) << ','
        << format_number(e.mean_iou) << ',' << format_number(e.coverage) << ','
        << format_number(e.mean_set_size) << '\n';
  }
  return out.str();
}

}  // namespace roomscope
