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

#include <benchmark/benchmark.h>

#include "roomscope/border_map.hpp"
#include "roomscope/grid.hpp"
#include "roomscope/synth.hpp"

namespace {

using namespace roomscope;

const PointCloud& scene_cloud() {
  static const PointCloud cloud = make_four_room_scene().cloud;
  return cloud;
}

void BM_ProjectDensity(benchmark::State& state) {
  const PointCloud& cloud = scene_cloud();
  const GridSpec spec = grid_covering(cloud.points, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(project_density(cloud.points, spec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cloud.size()));
}
BENCHMARK(BM_ProjectDensity)->Unit(benchmark::kMillisecond);

void BM_BuildBorderMaps(benchmark::State& state) {
  const PointCloud& cloud = scene_cloud();
  BorderParams params;
  params.n_slices = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_border_maps(cloud, 0.05, params));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cloud.size()));
}
BENCHMARK(BM_BuildBorderMaps)->Arg(10)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
