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

#include <vector>

#include "voxsem/neural/tensor.hpp"

namespace voxsem::nn {

struct SgdConfig {
  double lr = 0.01;
  double momentum = 0.9;
  int accumulation_k = 4;

  void validate() const;
};

/// Momentum SGD with gradient accumulation. Gradients passed to step() are
/// summed; every k-th call applies v = momentum * v + sum and
/// theta -= lr * v, then clears the sum.
template <typename T>
class Sgd {
 public:
  explicit Sgd(const SgdConfig& cfg);

  /// Returns true when this call applied an update.
  bool step(const std::vector<Tensor<T>*>& params, const std::vector<const Tensor<T>*>& grads);

  int pending() const { return pending_; }
  const SgdConfig& config() const { return cfg_; }

 private:
  SgdConfig cfg_;
  int pending_ = 0;
  std::vector<std::vector<double>> accum_;
  std::vector<std::vector<double>> velocity_;
};

}  // namespace voxsem::nn
