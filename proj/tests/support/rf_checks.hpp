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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "support/fixtures.hpp"
#include "voxsem/neural/network.hpp"
#include "voxsem/neural/receptive_field.hpp"

namespace voxsem::testing {

struct RandomRfCase {
  nn::NetworkSpec spec;
  int z = 0, y = 0, x = 0;
};

// Random pool-free DAG: plain convs, residual pairs and concat branches.
inline RandomRfCase random_rf_case(Rng& rng) {
  for (;;) {
    RandomRfCase c;
    auto& s = c.spec;
    s.input_channels = 1;
    s.input_dims = {rng.uniform_int(10, 18), rng.uniform_int(10, 18), rng.uniform_int(10, 18)};
    std::string cur = nn::kInputName;
    int channels = 1;
    int id = 0;
    const auto name = [&](const char* p) { return std::string(p) + std::to_string(id++); };
    bool ok = true;
    const int blocks = rng.uniform_int(3, 5);
    for (int b = 0; b < blocks && ok; ++b) {
      const int kind = rng.uniform_int(0, 3);
      if (kind == 0 || cur == nn::kInputName) {
        nn::LayerSpec l{name("conv"), nn::LayerType::Conv, {cur}, rng.uniform_int(1, 2)};
        l.kernel = 2 * rng.uniform_int(0, 2) + 1;
        l.stride = rng.uniform_int(1, 2);
        l.dilation = rng.uniform_int(1, 3);
        l.padding = rng.uniform_int(0, (l.dilation * (l.kernel - 1)) / 2);
        s.layers.push_back(l);
        cur = l.name;
        channels = l.out_channels;
      } else if (kind == 1) {
        const int d = rng.uniform_int(1, 2);
        nn::LayerSpec a{name("res"), nn::LayerType::Conv, {cur}, channels, 3, 1, d, d};
        nn::LayerSpec r{name("relu"), nn::LayerType::Relu, {a.name}};
        nn::LayerSpec bconv{name("res"), nn::LayerType::Conv, {r.name}, channels, 3, 1, 1, 1};
        nn::LayerSpec add{name("add"), nn::LayerType::Add, {cur, bconv.name}};
        s.layers.insert(s.layers.end(), {a, r, bconv, add});
        cur = add.name;
      } else if (kind == 2) {
        const int d = rng.uniform_int(1, 3);
        nn::LayerSpec br{name("branch"), nn::LayerType::Conv, {cur}, 1, 3, 1, d, d};
        nn::LayerSpec cat{name("cat"), nn::LayerType::Concat, {cur, br.name}};
        s.layers.insert(s.layers.end(), {br, cat});
        cur = cat.name;
        channels += 1;
      } else {
        nn::LayerSpec r{name("relu"), nn::LayerType::Relu, {cur}};
        s.layers.push_back(r);
        cur = r.name;
      }
      try {
        s.validate();
        const auto shape = s.shapes().at(cur);
        ok = shape.d() >= 2 && shape.h() >= 2 && shape.w() >= 2;
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok || s.layers.empty()) continue;
    const auto out = s.shapes().at(s.output_layer().name);
    c.z = rng.uniform_int(0, out.d() - 1);
    c.y = rng.uniform_int(0, out.h() - 1);
    c.x = rng.uniform_int(0, out.w() - 1);
    return c;
  }
}

// Input voxels with nonzero gradient from one output voxel, all weights and
// inputs positive so no contribution cancels and every relu stays open.
inline std::vector<std::uint8_t> empirical_support(const RandomRfCase& c, Rng& rng) {
  nn::Network<double> net(c.spec);
  net.init(1, 1.0);
  for (const auto& p : net.parameters()) {
    for (auto& v : p.value->data) v = rng.uniform(0.1, 1.0);
  }
  auto x = random_tensor<double>(c.spec.input_shape(), rng, 0.5, 1.5);
  const auto& out = net.forward(x);
  nn::Tensor<double> grad(out.shape);
  for (int ch = 0; ch < out.shape.c(); ++ch) grad.at(0, ch, c.z, c.y, c.x) = 1.0;
  net.backward(grad, true);
  const auto& g = net.input_grad();
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(g.shape.spatial()), 0);
  for (int ch = 0; ch < g.shape.c(); ++ch) {
    for (std::int64_t v = 0; v < g.shape.spatial(); ++v) {
      if (g.channel(0, ch)[v] != 0.0) mask[v] = 1;
    }
  }
  return mask;
}

inline bool rf_case_matches(const RandomRfCase& c, Rng& rng) {
  const auto analytic = nn::receptive_set(c.spec, c.spec.output_layer().name, c.z, c.y, c.x);
  return analytic == empirical_support(c, rng);
}

}  // namespace voxsem::testing
