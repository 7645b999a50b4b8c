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
#include "voxsem/eval/metrics.hpp"
#include "voxsem/ssc/sampling.hpp"

namespace {

using namespace voxsem;

struct Grids {
  eval::LabelGrid pred, gt;
  VoxelGrid<VoxelState> states;
};

Grids make_grids() {
  GridSpec g;
  g.dims = {60, 36, 60};
  g.voxel_size = 0.08;
  Grids x{eval::LabelGrid(g), eval::LabelGrid(g), VoxelGrid<VoxelState>(g)};
  Rng rng(9);
  for (std::int64_t v = 0; v < g.count(); ++v) {
    x.gt[v] = rng.uniform() < 0.8 ? 0 : static_cast<std::uint8_t>(1 + rng.below(11));
    x.pred[v] = rng.uniform() < 0.7 ? x.gt[v] : static_cast<std::uint8_t>(rng.below(12));
    x.states[v] = static_cast<VoxelState>(rng.below(kVoxelStateCount));
  }
  return x;
}

void BM_SemanticIou(benchmark::State& state) {
  const Grids x = make_grids();
  const auto mask = eval::build_mask(x.states, eval::MaskTag::SemanticFull);
  for (auto _ : state) benchmark::DoNotOptimize(eval::semantic_iou(x.pred, x.gt, mask.mask));
}
BENCHMARK(BM_SemanticIou);

void BM_BalanceSample(benchmark::State& state) {
  const Grids x = make_grids();
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ssc::balance_sample(x.gt, x.states, ++seed));
}
BENCHMARK(BM_BalanceSample);

}  // namespace

BENCHMARK_MAIN();
