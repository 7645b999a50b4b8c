// Copyright 2026 The VoxSem Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "voxsem/common/rng.hpp"
#include "voxsem/forge/cameras.hpp"
#include "voxsem/forge/dataset.hpp"
#include "voxsem/forge/labels.hpp"
#include "voxsem/forge/render.hpp"
#include "voxsem/forge/scene.hpp"
#include "voxsem/forge/view.hpp"
#include "voxsem/tsdf/kdtree.hpp"
#include "voxsem/tsdf/tsdf.hpp"
#include "voxsem/volume/visibility.hpp"

namespace {

using namespace voxsem;

// One procedural view per preset, in its view frame.
struct Fixture {
  forge::RenderedView view[2];
};

const Fixture& fixture() {
  static const Fixture f = [] {
    Fixture x;
    const auto scene = forge::generate_scene(forge::SceneParams::defaults(), 3);
    const auto camera = forge::sample_cameras(scene, 3, 1).at(0);
    const auto vox = forge::voxelize_scene_meshes(scene);
    for (int p = 0; p < 2; ++p) {
      x.view[p] = forge::render_view(scene, camera, forge::preset_grid(static_cast<forge::ScalePreset>(p)), vox);
    }
    return x;
  }();
  return f;
}

void BM_Classify(benchmark::State& state) {
  const auto& v = fixture().view[state.range(0)];
  const GridSpec& g = v.record.grid;
  const PinholeCamera& cam = v.record.camera;
  for (auto _ : state) benchmark::DoNotOptimize(classify_voxels(v.depth, cam, g, v.record.room));
  state.SetItemsProcessed(state.iterations() * g.count());
}

void BM_ProjectiveTsdf(benchmark::State& state) {
  const auto& v = fixture().view[state.range(0)];
  const GridSpec& g = v.record.grid;
  const PinholeCamera& cam = v.record.camera;
  for (auto _ : state) benchmark::DoNotOptimize(tsdf::projective_tsdf(v.depth, cam, g));
  state.SetItemsProcessed(state.iterations() * g.count());
}

void BM_AccurateTsdf(benchmark::State& state) {
  const auto& v = fixture().view[state.range(0)];
  const GridSpec& g = v.record.grid;
  const PinholeCamera& cam = v.record.camera;
  const auto states = classify_voxels(v.depth, cam, g, v.record.room);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tsdf::accurate_tsdf(v.depth, cam, g, 0.24, states));
  }
  state.SetItemsProcessed(state.iterations() * g.count());
}

// 0 = full, 1 = toy
BENCHMARK(BM_Classify)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProjectiveTsdf)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AccurateTsdf)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_KdTreeNearest(benchmark::State& state) {
  Rng rng(1);
  std::vector<Vec3> pts(static_cast<std::size_t>(state.range(0)));
  for (auto& p : pts) p = {rng.uniform(0, 4), rng.uniform(0, 3), rng.uniform(0, 4)};
  const tsdf::KdTree tree(pts);
  std::vector<Vec3> queries(4096);
  for (auto& q : queries) q = {rng.uniform(0, 4), rng.uniform(0, 3), rng.uniform(0, 4)};
  for (auto _ : state) {
    double acc = 0.0;
    for (const auto& q : queries) acc += tree.nearest_distance(q, 0.24);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(queries.size()));
}
BENCHMARK(BM_KdTreeNearest)->Arg(10000)->Arg(300000);

}  // namespace

BENCHMARK_MAIN();
