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

template <typename T>
Tensor<T> relu(const Tensor<T>& x);

/// Gradient through relu given the forward output: passes where y > 0.
template <typename T>
Tensor<T> relu_backward(const Tensor<T>& grad_output, const Tensor<T>& output);

/// Concatenates along channels; all other dims must agree.
template <typename T>
Tensor<T> concat_channels(const std::vector<const Tensor<T>*>& inputs);

/// Splits a concatenated gradient back into per-input channel blocks.
template <typename T>
std::vector<Tensor<T>> split_channels(const Tensor<T>& grad_output,
                                      const std::vector<int>& channels);

/// Elementwise sum; shapes must match exactly. The backward pass hands the
/// same gradient to both operands.
template <typename T>
Tensor<T> add(const Tensor<T>& a, const Tensor<T>& b);

}  // namespace voxsem::nn
