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
struct PoolResult {
  Tensor<T> output;
  /// Linear input index of each output's maximum.
  std::vector<std::int64_t> argmax;
};

/// Max pooling without padding. Windows are scanned in linear order and
/// ties keep the first (lowest-index) maximum. Output extent per axis is
/// (in - window) / stride + 1; throws when window exceeds the input.
template <typename T>
PoolResult<T> pool3d_max(const Tensor<T>& input, int window, int stride);

template <typename T>
Tensor<T> pool3d_max_backward(const Tensor<T>& grad_output,
                              const std::vector<std::int64_t>& argmax,
                              const Shape& input_shape);

}  // namespace voxsem::nn
