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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances and sizes are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "roomscope/border_map.hpp"
#include "roomscope/classification_metrics.hpp"
#include "roomscope/conformal.hpp"
#include "roomscope/pipeline.hpp"
#include "roomscope/room_mask.hpp"
#include "roomscope/segmentation_metrics.hpp"
#include "roomscope/snapshot.hpp"
#include "roomscope/synth.hpp"

using namespace roomscope;
namespace fs = std::filesystem;

namespace {

// AC1
constexpr std::size_t kCoverageCal = 500;
constexpr std::size_t kCoverageTest = 2000;
constexpr double kCoverageAlpha = 0.3;
constexpr double kCoverageFloor = 0.67;
constexpr double kCoverageSeconds = 5.0;
constexpr std::uint64_t kCoverageSeed = 20240601;
// AC2
constexpr std::size_t kMixedCal = 500;
constexpr std::size_t kMixedVal = 500;
constexpr std::size_t kMixedTest = 1000;
constexpr double kMixedSeconds = 10.0;
constexpr std::uint64_t kMixedSeed = 424242;
// AC3
constexpr int kOracleInstances = 1000;
constexpr std::size_t kOracleMaxRooms = 6;
constexpr std::size_t kOracleMaxCal = 8;
// AC5
constexpr int kBorderInstances = 200;
constexpr std::size_t kBorderMaxSide = 32;
constexpr std::size_t kBorderMaxSlices = 10;
// AC6
constexpr int kPoseRooms = 1000;
constexpr double kEllipseTolerance = 1e-9;
// AC7
constexpr double kMetricTolerance = 1e-9;
// AC8
constexpr double kSegmenterMiouFloor = 0.9;

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && first_failure_.empty()) first_failure_ = what;
    ok_ = ok_ && ok;
  }
  [[nodiscard]] bool ok() const { return ok_; }
  [[nodiscard]] const std::string& failure() const { return first_failure_; }

 private:
  bool ok_ = true;
  std::string first_failure_;
};

std::string fmt(double v, int precision = 4) {
  std::ostringstream s;
  s.precision(precision);
  s << std::fixed << v;
  return s.str();
}

std::string sci(double v) {
  std::ostringstream s;
  s.precision(2);
  s << std::scientific << v;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome ac1_coverage() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cal = make_coverage_records(kCoverageCal, kCoverageSeed, {}, "cov_cal");
  const auto test = make_coverage_records(kCoverageTest, kCoverageSeed + 1, {}, "cov_test");
  const CalibrationSet set = build_calibration_set(cal);
  const double q_hat = conformal_quantile(set, kCoverageAlpha);
  std::size_t covered = 0;
  for (const LabeledScoreRecord& r : test) {
    covered += covers(acp_prediction_set(r.dist, q_hat, kCoverageAlpha), r.true_rooms) ? 1 : 0;
  }
  const double coverage = static_cast<double>(covered) / static_cast<double>(test.size());
  const double secs = seconds_since(t0);
  return {coverage >= kCoverageFloor && secs < kCoverageSeconds,
          "coverage " + fmt(coverage) + " >= " + fmt(kCoverageFloor, 2) + " (q_hat " +
              fmt(q_hat) + ", " + fmt(secs, 3) + " s < " + fmt(kCoverageSeconds, 0) + " s)"};
}

double test_rm_iou(const MixedScaleBenchmark& b, Method method, double* alpha_out) {
  const CalibrationSet cal = build_calibration_set(b.calibration, method);
  const std::vector<double> grid = default_alpha_grid();
  const AlphaSearch search = optimize_alpha(b.validation, cal, grid);
  *alpha_out = search.alpha_star;
  std::vector<PredictionSet> sets;
  std::vector<std::vector<std::string>> truth;
  for (const LabeledScoreRecord& r : b.test) {
    sets.push_back(prediction_set(r.dist, cal, search.alpha_star));
    truth.push_back(r.true_rooms);
  }
  return rm_iou(sets, truth);
}

Outcome ac2_acp_beats_cp() {
  const auto t0 = std::chrono::steady_clock::now();
  const MixedScaleBenchmark b =
      make_mixed_scale_benchmark(kMixedCal, kMixedVal, kMixedTest, kMixedSeed);
  double alpha_acp = 0.0, alpha_cp = 0.0;
  const double acp = test_rm_iou(b, Method::kAcp, &alpha_acp);
  const double cp = test_rm_iou(b, Method::kCp, &alpha_cp);
  const double secs = seconds_since(t0);
  return {acp > cp && secs < kMixedSeconds,
          "RmIoU acp " + fmt(acp) + " (alpha* " + fmt(alpha_acp, 2) + ") > cp " + fmt(cp) +
              " (alpha* " + fmt(alpha_cp, 2) + "), " + fmt(secs, 3) + " s < " +
              fmt(kMixedSeconds, 0) + " s"};
}

Outcome ac3_oracle_equivalence() {
  std::mt19937_64 rng(3);
  Check c;
  std::size_t compared = 0;
  for (int inst = 0; inst < kOracleInstances && c.ok(); ++inst) {
    const std::size_t n_rooms = 1 + rng() % kOracleMaxRooms;
    const std::size_t n_cal = 1 + rng() % kOracleMaxCal;
    std::vector<LabeledScoreRecord> cal;
    for (std::size_t i = 0; i < n_cal; ++i) {
      cal.push_back(testing::random_tied_record(rng, n_rooms, "c" + std::to_string(i)));
    }
    const int pct = 1 + static_cast<int>(rng() % 99);
    const double alpha = pct / 100.0;
    const std::string tag = "instance " + std::to_string(inst);

    for (Method m : {Method::kAcp, Method::kCp}) {
      const CalibrationSet set = build_calibration_set(cal, m);
      std::vector<double> oracle_scores;
      for (const auto& r : cal) {
        oracle_scores.push_back(m == Method::kAcp ? oracle::acp_score(r) : oracle::cp_score(r));
      }
      c.expect(set.scores == oracle_scores, tag + ": calibration scores");
      const double q = conformal_quantile(set, alpha);
      c.expect(q == oracle::quantile_pct(oracle_scores, pct), tag + ": quantile");

      for (int t = 0; t < 3; ++t) {
        const ScoreDistribution d = testing::random_tied_dist(rng, n_rooms, "t");
        // Also probe thresholds that sit exactly on a prefix mass.
        const double probe = t == 0 ? q : oracle::prefix_mass(d, oracle::rank(d), 1 + rng() % n_rooms);
        const PredictionSet acp = acp_prediction_set(d, probe, alpha);
        c.expect(acp.rooms == oracle::acp_set(d, probe), tag + ": acp set");
        c.expect(acp.k == acp.rooms.size(), tag + ": acp k");
        const PredictionSet cp = cp_prediction_set(d, probe, alpha);
        c.expect(cp.rooms == oracle::cp_set(d, probe), tag + ": cp set");
        compared += 2;
      }

      std::vector<LabeledScoreRecord> val;
      const std::size_t n_val = 1 + rng() % 5;
      for (std::size_t i = 0; i < n_val; ++i) {
        val.push_back(testing::random_tied_record(rng, n_rooms, "v" + std::to_string(i)));
      }
      std::vector<int> grid_pct;
      for (int g = 1 + static_cast<int>(rng() % 15); g < 100; g += 1 + static_cast<int>(rng() % 30)) {
        grid_pct.push_back(g);
      }
      std::vector<double> grid;
      for (int g : grid_pct) grid.push_back(g / 100.0);
      const AlphaSearch search = optimize_alpha(val, set, grid);
      const oracle::AlphaSweep sweep = oracle::optimize_alpha(val, oracle_scores, m, grid_pct);
      c.expect(search.alpha_star == sweep.best_pct / 100.0, tag + ": alpha*");
      for (std::size_t g = 0; g < grid.size(); ++g) {
        c.expect(search.table[g].mean_iou == sweep.mean_iou[g], tag + ": mean IoU table");
      }
    }
  }
  return {c.ok(), c.ok() ? std::to_string(kOracleInstances) + " instances, " +
                               std::to_string(compared) + " sets, exact match"
                         : "mismatch at " + c.failure()};
}

Outcome ac4_alpha_star() {
  Check c;
  // Calibration scores 0.25, 0.375, 0.625; one validation record whose two
  // true rooms are exactly the top-2 prefix.
  const std::vector<LabeledScoreRecord> cal = {
      testing::make_record({0.25, 0.25, 0.25, 0.25}, {0}, "a"),
      testing::make_record({0.375, 0.3125, 0.3125}, {0}, "b"),
      testing::make_record({0.625, 0.375}, {0}, "c"),
  };
  const std::vector<LabeledScoreRecord> val = {
      testing::make_record({0.5, 0.25, 0.125, 0.125}, {0, 1}, "v")};
  const CalibrationSet set = build_calibration_set(cal);
  const std::vector<double> grid = {0.1, 0.3, 0.5};
  const AlphaSearch search = optimize_alpha(val, set, grid);
  c.expect(search.alpha_star == 0.3, "fixture alpha* is 0.3");
  const auto sweep = oracle::optimize_alpha(val, set.scores, Method::kAcp, {10, 30, 50});
  c.expect(search.alpha_star == sweep.best_pct / 100.0, "fixture alpha* equals exhaustive grid");

  // Exhaustive argmax on generated data over the full default grid.
  const MixedScaleBenchmark b = make_mixed_scale_benchmark(60, 60, 0, 99);
  std::vector<int> pct;
  for (int i = 1; i <= 99; ++i) pct.push_back(i);
  for (Method m : {Method::kAcp, Method::kCp}) {
    const CalibrationSet mixed = build_calibration_set(b.calibration, m);
    const AlphaSearch s = optimize_alpha(b.validation, mixed, default_alpha_grid());
    const auto o = oracle::optimize_alpha(b.validation, mixed.scores, m, pct);
    c.expect(s.alpha_star == o.best_pct / 100.0, "generated alpha* equals exhaustive grid");
  }
  c.expect(kDefaultAlpha == 0.3, "default alpha* constant");
  c.expect(PipelineConfig{}.alpha == 0.3, "pipeline default alpha");
  return {c.ok(), c.ok() ? "grid argmax exact; fixture alpha* 0.3; default alpha* 0.3"
                         : c.failure()};
}

OccupancyGrid to_grid(const GridSpec& spec, GridKind kind, const oracle::Cells& cells) {
  OccupancyGrid g(spec, kind);
  auto out = g.mutable_cells();
  for (std::size_t i = 0; i < cells.size(); ++i) out[i] = cells[i];
  return g;
}

Outcome ac5_border_map() {
  std::mt19937_64 rng(5);
  Check c;
  std::size_t selected_total = 0, boundary_cases = 0;
  for (int inst = 0; inst < kBorderInstances && c.ok(); ++inst) {
    GridSpec spec;
    spec.width = 1 + rng() % kBorderMaxSide;
    spec.height = 1 + rng() % kBorderMaxSide;
    const std::size_t n = spec.cell_count();
    const std::size_t n_slices = 1 + rng() % kBorderMaxSlices;

    BorderParams params;
    params.n_slices = n_slices;
    oracle::Fraction lo{1, 15}, hi{1, 5}, frac{3, 4};
    if (inst % 2 == 1) {
      const std::int64_t a = static_cast<std::int64_t>(rng() % 10);
      lo = {a, 20};
      hi = {a + 1 + static_cast<std::int64_t>(rng() % 10), 20};
      frac = {1 + static_cast<std::int64_t>(rng() % 8), 8};
    }
    params.delta_b = lo.value();
    params.delta_t = hi.value();
    params.merge_fraction = frac.value();
    params.gamma = static_cast<double>(rng() % 11) / 10.0;

    oracle::Cells full(n, 0);
    for (auto& x : full) x = rng() % 3 != 0 ? 1 : 0;
    full[rng() % n] = 1;
    std::vector<std::size_t> occupied;
    for (std::size_t i = 0; i < n; ++i) {
      if (full[i]) occupied.push_back(i);
    }
    const auto s = static_cast<std::int64_t>(occupied.size());

    std::vector<oracle::Cells> slices(n_slices, oracle::Cells(n, 0));
    for (std::size_t k = 0; k < n_slices; ++k) {
      std::int64_t count = static_cast<std::int64_t>(rng() % (occupied.size() + 1));
      // Land some slices exactly on a bound when it is an integer.
      if (rng() % 3 == 0) {
        const oracle::Fraction f = rng() % 2 ? lo : hi;
        if ((f.num * s) % f.den == 0) {
          count = f.num * s / f.den;
          ++boundary_cases;
        }
      }
      std::shuffle(occupied.begin(), occupied.end(), rng);
      for (std::int64_t j = 0; j < count; ++j) slices[k][occupied[static_cast<std::size_t>(j)]] = 1;
    }

    std::vector<OccupancyGrid> grids;
    for (const auto& sl : slices) grids.push_back(to_grid(spec, GridKind::kBinarySlice, sl));
    const OccupancyGrid full_grid = to_grid(spec, GridKind::kBinarySlice, full);
    const SliceSelection sel = select_border_slices(grids, full_grid, params);
    const auto expect_sel = oracle::select_slices(slices, full, lo, hi);
    const std::string tag = "instance " + std::to_string(inst);
    c.expect(sel.selected_indices == expect_sel, tag + ": slice selection");
    selected_total += expect_sel.size();
    if (expect_sel.empty()) continue;

    const OccupancyGrid border = merge_border_map(sel, grids, params);
    const oracle::Cells expect_border = oracle::merge_border(slices, expect_sel, frac);
    c.expect(border == to_grid(spec, GridKind::kBorder, expect_border), tag + ": border merge");

    std::vector<double> density(n);
    for (double& d : density) d = static_cast<double>(rng() % 1001) / 1000.0;
    const OccupancyGrid dgrid(spec, GridKind::kDensity, density);
    const OccupancyGrid combined = combine_maps(dgrid, border, params);
    const std::vector<double> expect_combined = oracle::combine(density, expect_border, params.gamma);
    c.expect(std::vector<double>(combined.cells().begin(), combined.cells().end()) ==
                 expect_combined,
             tag + ": combination");
  }
  return {c.ok(), c.ok() ? std::to_string(kBorderInstances) + " instances exact (" +
                               std::to_string(selected_total) + " kept slices, " +
                               std::to_string(boundary_cases) + " on a bound)"
                         : "mismatch at " + c.failure()};
}

Outcome ac6_pose_geometry() {
  std::mt19937_64 rng(6);
  Check c;
  double worst = 0.0;
  std::size_t poses_checked = 0;
  for (int i = 0; i < kPoseRooms && c.ok(); ++i) {
    RoomBox box;
    box.center_x = unit_uniform(rng) * 100.0 - 50.0;
    box.center_y = unit_uniform(rng) * 100.0 - 50.0;
    box.length = 0.5 + unit_uniform(rng) * 19.5;
    box.width = 0.5 + unit_uniform(rng) * 19.5;
    box.z_c = 0.5 + unit_uniform(rng) * 2.5;
    const std::size_t n = 1 + rng() % 64;
    const std::vector<CameraPose> poses = plan_camera_poses(box, n);
    c.expect(poses.size() == n, "pose count");
    for (std::size_t v = 0; v < poses.size(); ++v) {
      const CameraPose& p = poses[v];
      const double dx = (p.position[0] - box.center_x) / (0.5 * box.length);
      const double dy = (p.position[1] - box.center_y) / (0.5 * box.width);
      const double residual = std::abs(dx * dx + dy * dy - 1.0);
      worst = std::max({worst, residual, ellipse_residual(box, p)});
      c.expect(residual < kEllipseTolerance && ellipse_residual(box, p) < kEllipseTolerance,
               "ellipse residual");
      c.expect(p.angle == 2.0 * std::numbers::pi * static_cast<double>(v) / static_cast<double>(n),
               "angle 2*pi*i/n");
      c.expect(p.position[2] == box.z_c && p.look_at[2] == box.z_c, "camera height");
      c.expect(p.look_at[0] == box.center_x && p.look_at[1] == box.center_y, "look-at centre");
      if (v > 0) {
        const CameraPose& q = poses[v - 1];
        c.expect(std::abs((p.angle - q.angle) - 2.0 * std::numbers::pi / static_cast<double>(n)) <
                     1e-12,
                 "uniform spacing");
        double recovered = std::atan2(dy, dx) -
                           std::atan2((q.position[1] - box.center_y) / (0.5 * box.width),
                                      (q.position[0] - box.center_x) / (0.5 * box.length));
        if (recovered < 0.0) recovered += 2.0 * std::numbers::pi;
        c.expect(std::abs(recovered - 2.0 * std::numbers::pi / static_cast<double>(n)) < 1e-9,
                 "recovered spacing");
      }
      ++poses_checked;
    }
  }
  return {c.ok(), c.ok() ? std::to_string(poses_checked) + " poses, max residual " +
                               sci(worst) + " < 1e-9, spacing exact"
                         : c.failure()};
}

RoomPolygon rect(const std::string& id, double x0, double y0, double x1, double y1,
                 double conf = 1.0) {
  return {id, {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}, conf, std::nullopt};
}

Outcome ac7_metric_identities() {
  Check c;
  auto near = [](double a, double b) { return std::abs(a - b) <= kMetricTolerance; };
  GridSpec spec;
  spec.cell_size = 0.1;
  spec.width = 40;
  spec.height = 20;
  const std::vector<RoomPolygon> gt = {rect("a", 0.0, 0.0, 1.5, 1.5), rect("b", 2.0, 0.0, 3.5, 1.6),
                                       rect("c", 0.0, 1.6, 3.9, 1.9)};

  const SegmentationReport perfect = segmentation_metrics(gt, gt, spec);
  c.expect(perfect.ap50 == 1.0 && perfect.miou == 1.0, "perfect AP50/mIoU");
  const SegmentationReport none = segmentation_metrics({}, gt, spec);
  c.expect(none.ap50 == 0.0 && none.miou == 0.0, "no predictions give zeros");
  const std::vector<RoomPolygon> disjoint = {rect("x", 3.6, 0.0, 3.9, 0.5)};
  const SegmentationReport dis = segmentation_metrics(disjoint, gt, spec);
  c.expect(dis.ap50 == 0.0 && dis.miou == 0.0, "disjoint predictions give zeros");

  // Ranked TP/FP = T F T F F T with 4 positives:
  // 0.25 * (1 + 2/3 + 1/2) = 0.541666...
  const std::vector<bool> ranked = {true, false, true, false, false, true};
  c.expect(near(interpolated_average_precision(ranked, 4), 0.25 * (1.0 + 2.0 / 3.0 + 0.5)),
           "hand AP fixture");
  c.expect(near(interpolated_average_precision(ranked, 4), oracle::interpolated_ap(ranked, 4)),
           "AP oracle");
  // Predictions: pb covers 8 of b's 16 rows, pa covers 5 of a's 15.
  std::vector<RoomPolygon> preds = {rect("pa", 0.0, 0.0, 1.5, 0.5, 0.9),
                                    rect("pb", 2.0, 0.0, 3.5, 0.8, 0.8)};
  const SegmentationReport pr = segmentation_metrics(preds, gt, spec);
  // Ranked: pa (FP, IoU 1/3), pb (TP, IoU 0.5): AP = 1/3 * 1/2.
  c.expect(near(pr.ap50, 1.0 / 6.0), "hand AP50 fixture");
  c.expect(near(pr.miou, (1.0 / 3.0 + 0.5 + 0.0) / 3.0), "hand mIoU fixture");

  const std::vector<std::string> labels = {"a", "b", "c"};
  const std::vector<std::string> truth = {"a", "a", "b", "b", "c"};
  const ClassificationReport same = classification_metrics(truth, truth, labels);
  c.expect(same.precision == 1.0 && same.recall == 1.0 && same.f1_weighted == 1.0 &&
               same.map == 1.0,
           "perfect precision/recall/F1/mAP");
  const std::vector<std::string> wrong = {"c", "c", "a", "a", "b"};
  const ClassificationReport zero = classification_metrics(wrong, truth, labels);
  c.expect(zero.precision == 0.0 && zero.recall == 0.0 && zero.f1_weighted == 0.0,
           "all-wrong classification gives zeros");
  const std::vector<std::string> pred = {"a", "b", "b", "b", "c"};
  const ClassificationReport hand = classification_metrics(pred, truth, labels);
  c.expect(near(hand.precision, 8.0 / 9.0), "hand macro precision");
  c.expect(near(hand.recall, 5.0 / 6.0), "hand macro recall");
  c.expect(near(hand.f1_weighted, (2.0 * 2.0 / 3.0 + 2.0 * 0.8 + 1.0) / 5.0), "hand weighted F1");
  c.expect(near(hand.map, (0.7 + 2.0 / 3.0 + 1.0) / 3.0), "hand mAP");

  PredictionSet ab;
  ab.rooms = {"A", "B"};
  c.expect(near(rm_iou(std::vector<PredictionSet>{ab},
                       std::vector<std::vector<std::string>>{{"B", "C"}}),
                1.0 / 3.0),
           "RmIoU 1/3");
  PredictionSet bc;
  bc.rooms = {"B", "C"};
  c.expect(near(rm_iou(std::vector<PredictionSet>{ab, bc},
                       std::vector<std::vector<std::string>>{{"B", "C"}, {"B", "C"}}),
                2.0 / 3.0),
           "RmIoU two scenes");
  c.expect(rm_iou(std::vector<PredictionSet>{ab, bc},
                  std::vector<std::vector<std::string>>{{"A", "B"}, {"B", "C"}}) == 1.0,
           "perfect RmIoU");
  c.expect(rm_iou(std::vector<PredictionSet>{ab},
                  std::vector<std::vector<std::string>>{{"C"}}) == 0.0,
           "disjoint RmIoU");
  const ScoreDistribution d = testing::make_dist({0.4, 0.3, 0.2, 0.1});
  c.expect(acp_prediction_set(d, 0.0, 0.3).rooms == std::vector<std::string>{"r0"},
           "ACP q_hat 0 falls back to top-1");
  c.expect(cp_prediction_set(d, 0.0, 0.3).rooms == std::vector<std::string>{"r0"},
           "CP empty set falls back to top-1");
  return {c.ok(), c.ok() ? "identities, zeros, fallbacks and hand fixtures hold" : c.failure()};
}

Outcome ac8_end_to_end() {
  Check c;
  testing::TempDir dir("acceptance_e2e");
  write_synthetic_scene(make_four_room_scene(), dir / "scene");
  const PipelineInputs inputs = load_manifests(dir / "scene" / "manifest.json");
  const PipelineConfig config = load_config(dir / "scene" / "config.json");
  std::string reports[2];
  double miou = 0.0;
  bool complete = true;
  for (int run = 0; run < 2; ++run) {
    const fs::path out = dir / ("run" + std::to_string(run));
    const RunReport report = run_pipeline(config, inputs, out);
    write_run_report(report, out);
    reports[run] = testing::read_text(out / "report.json");
    if (report.segmentation) miou = report.segmentation->miou;
    complete = complete && report.failed_scenes() == 0 && report.segmentation &&
               report.classification && report.selection;
  }
  // Every artifact, not only the report, must be byte-identical.
  bool artifacts_equal = true;
  std::size_t artifacts = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir / "run0")) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), dir / "run0");
    artifacts_equal = artifacts_equal && testing::read_text(entry.path()) ==
                                             testing::read_text(dir / "run1" / rel);
    ++artifacts;
  }
  c.expect(complete, "all report blocks populated");
  c.expect(!reports[0].empty() && reports[0] == reports[1], "byte-identical report.json");
  c.expect(artifacts_equal, "byte-identical artifacts");
  c.expect(miou >= kSegmenterMiouFloor, "baseline segmenter mIoU");
  return {c.ok(), (c.ok() ? "" : c.failure() + "; ") + "reports identical, " +
                      std::to_string(artifacts) + " artifacts compared, segmenter mIoU " +
                      fmt(miou) + " >= " + fmt(kSegmenterMiouFloor, 2)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 conformal coverage guarantee", ac1_coverage},
      {"AC2 ACP beats CP on mixed-scale scenes", ac2_acp_beats_cp},
      {"AC3 conformal oracle equivalence", ac3_oracle_equivalence},
      {"AC4 alpha* grid optimum and default", ac4_alpha_star},
      {"AC5 border map against per-cell oracles", ac5_border_map},
      {"AC6 elliptical pose geometry", ac6_pose_geometry},
      {"AC7 metric identities", ac7_metric_identities},
      {"AC8 end-to-end determinism", ac8_end_to_end},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
