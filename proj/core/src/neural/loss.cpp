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

#include "voxsem/neural/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "voxsem/common/error.hpp"

namespace voxsem::nn {

namespace {

template <typename T>
void check_logits(const Tensor<T>& logits) {
  if (logits.shape.n() != 1 || logits.shape.c() < 1) {
    throw ValidationError("logits must have shape (1, C, d, h, w), found " + logits.shape.str());
  }
}

}  // namespace

template <typename T>
LossOutput<T> weighted_softmax_loss(const Tensor<T>& logits,
                                    const std::vector<std::uint8_t>& labels,
                                    const std::vector<std::uint8_t>& weights) {
  check_logits(logits);
  const int C = logits.shape.c();
  const std::int64_t S = logits.shape.spatial();
  if (static_cast<std::int64_t>(labels.size()) != S ||
      static_cast<std::int64_t>(weights.size()) != S) {
    throw ValidationError("loss: labels/weights hold " + std::to_string(labels.size()) + "/" +
                          std::to_string(weights.size()) + " voxels, logits " +
                          logits.shape.str());
  }
  LossOutput<T> out;
  out.grad = Tensor<T>(logits.shape);
  const T* z = logits.data.data();
  T* g = out.grad.data.data();
  std::vector<double> p(static_cast<std::size_t>(C));
  for (std::int64_t v = 0; v < S; ++v) {
    if (weights[v] > 1) throw ValidationError("loss weights must be 0 or 1");
    if (labels[v] >= C) {
      throw ValidationError("label " + std::to_string(labels[v]) + " out of range for " +
                            std::to_string(C) + " classes");
    }
    if (weights[v] == 0) continue;
    double mx = z[v];
    for (int c = 1; c < C; ++c) mx = std::max(mx, static_cast<double>(z[c * S + v]));
    double sum = 0.0;
    for (int c = 0; c < C; ++c) {
      p[c] = std::exp(static_cast<double>(z[c * S + v]) - mx);
      sum += p[c];
    }
    const int y = labels[v];
    out.raw += -(static_cast<double>(z[y * S + v]) - mx - std::log(sum));
    for (int c = 0; c < C; ++c) {
      g[c * S + v] = static_cast<T>(p[c] / sum - (c == y ? 1.0 : 0.0));
    }
    ++out.weighted_voxels;
  }
  out.mean = out.weighted_voxels > 0 ? out.raw / static_cast<double>(out.weighted_voxels) : 0.0;
  return out;
}

template <typename T>
Tensor<T> softmax_channels(const Tensor<T>& logits) {
  check_logits(logits);
  const int C = logits.shape.c();
  const std::int64_t S = logits.shape.spatial();
  Tensor<T> out(logits.shape);
  const T* z = logits.data.data();
  for (std::int64_t v = 0; v < S; ++v) {
    double mx = z[v];
    for (int c = 1; c < C; ++c) mx = std::max(mx, static_cast<double>(z[c * S + v]));
    double sum = 0.0;
    for (int c = 0; c < C; ++c) sum += std::exp(static_cast<double>(z[c * S + v]) - mx);
    for (int c = 0; c < C; ++c) {
      out.data[c * S + v] = static_cast<T>(std::exp(static_cast<double>(z[c * S + v]) - mx) / sum);
    }
  }
  return out;
}

template LossOutput<float> weighted_softmax_loss(const Tensor<float>&,
                                                 const std::vector<std::uint8_t>&,
                                                 const std::vector<std::uint8_t>&);
template LossOutput<double> weighted_softmax_loss(const Tensor<double>&,
                                                  const std::vector<std::uint8_t>&,
                                                  const std::vector<std::uint8_t>&);
template Tensor<float> softmax_channels(const Tensor<float>&);
template Tensor<double> softmax_channels(const Tensor<double>&);

}  // namespace voxsem::nn
