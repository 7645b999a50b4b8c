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
#include "voxsem/neural/conv.hpp"
#include "voxsem/neural/network.hpp"
#include "voxsem/neural/pool.hpp"
#include "voxsem/ssc/sscnet.hpp"

namespace {

using namespace voxsem;

template <typename T>
nn::Tensor<T> noise(const nn::Shape& s, std::uint64_t seed) {
  Rng rng(seed);
  nn::Tensor<T> t(s);
  for (auto& v : t.data) v = static_cast<T>(rng.uniform(-1.0, 1.0));
  return t;
}

// args: channels in/out, kernel, dilation; 32^3 volume
void BM_ConvForward(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const int d = static_cast<int>(state.range(2));
  nn::Conv3dParams<float> p;
  p.geometry = {c, c, k, 1, d, d * (k - 1) / 2};
  p.weight = noise<float>(p.geometry.weight_shape(), 1);
  p.bias = noise<float>(p.geometry.bias_shape(), 2);
  const auto x = noise<float>(nn::make_shape(1, c, 32, 32, 32), 3);
  for (auto _ : state) benchmark::DoNotOptimize(nn::conv3d_forward(x, p));
  state.SetItemsProcessed(state.iterations() * 32 * 32 * 32 * c * c * k * k * k);
}
BENCHMARK(BM_ConvForward)->Args({8, 3, 1})->Args({16, 3, 2})->Args({32, 3, 1})->Args({16, 7, 1})
    ->Unit(benchmark::kMillisecond);

void BM_ConvBackward(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0));
  nn::Conv3dParams<float> p;
  p.geometry = {c, c, 3, 1, 1, 1};
  p.weight = noise<float>(p.geometry.weight_shape(), 1);
  p.bias = noise<float>(p.geometry.bias_shape(), 2);
  const auto x = noise<float>(nn::make_shape(1, c, 32, 32, 32), 3);
  const auto g = noise<float>(p.geometry.output_shape(x.shape), 4);
  for (auto _ : state) benchmark::DoNotOptimize(nn::conv3d_backward(g, x, p));
}
BENCHMARK(BM_ConvBackward)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_MaxPool(benchmark::State& state) {
  const auto x = noise<float>(nn::make_shape(1, 16, 64, 32, 64), 5);
  for (auto _ : state) benchmark::DoNotOptimize(nn::pool3d_max(x, 2, 2));
}
BENCHMARK(BM_MaxPool)->Unit(benchmark::kMillisecond);

// Toy network forward and backward, one training step's compute.
void BM_ToySscnetStep(benchmark::State& state) {
  const double m = static_cast<double>(state.range(0)) / 100.0;
  nn::Network<float> net(ssc::build_sscnet(GridDims{64, 32, 64}, 0.075, {m}));
  net.init(1);
  const auto x = noise<float>(net.spec().input_shape(), 6);
  const auto g = noise<float>(net.spec().shapes().at(net.spec().layers.back().name), 7);
  for (auto _ : state) {
    net.forward(x);
    net.backward(g);
  }
}
BENCHMARK(BM_ToySscnetStep)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
