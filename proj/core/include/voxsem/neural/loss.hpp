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
#include <vector>

#include "voxsem/neural/tensor.hpp"

namespace voxsem::nn {

template <typename T>
struct LossOutput {
  /// Sum over voxels of w * -log softmax(logits)[label].
  double raw = 0.0;
  /// raw divided by the number of w = 1 voxels; 0 when there are none.
  double mean = 0.0;
  std::int64_t weighted_voxels = 0;
  /// d raw / d logits: (softmax - onehot) * w.
  Tensor<T> grad;
};

/// Voxel-wise softmax cross-entropy over channels of a (1, C, d, h, w)
/// tensor. `labels` and `weights` are laid out like one channel and weights
/// must be 0 or 1.
template <typename T>
LossOutput<T> weighted_softmax_loss(const Tensor<T>& logits,
                                    const std::vector<std::uint8_t>& labels,
                                    const std::vector<std::uint8_t>& weights);

/// Per-voxel channel softmax of a (1, C, d, h, w) tensor.
template <typename T>
Tensor<T> softmax_channels(const Tensor<T>& logits);

}  // namespace voxsem::nn
