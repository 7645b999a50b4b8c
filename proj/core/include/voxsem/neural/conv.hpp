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

#include "voxsem/neural/tensor.hpp"

namespace voxsem::nn {

/// Cubic 3-D convolution geometry. Output extent per axis is
/// floor((in + 2 * padding - dilation * (kernel - 1) - 1) / stride) + 1.
struct ConvGeometry {
  int in_channels = 1;
  int out_channels = 1;
  int kernel = 3;
  int stride = 1;
  int dilation = 1;
  int padding = 0;

  /// Throws ValidationError unless kernel is odd and positive, stride and
  /// dilation are >= 1, padding >= 0 and channel counts are >= 1.
  void validate() const;
  int support() const { return dilation * (kernel - 1) + 1; }
  /// Output extent for an input extent; throws if it would be < 1.
  int out_extent(int in) const;
  Shape output_shape(const Shape& input) const;
  Shape weight_shape() const { return make_shape(out_channels, in_channels, kernel, kernel, kernel); }
  Shape bias_shape() const { return make_shape(1, out_channels, 1, 1, 1); }
};

template <typename T>
struct Conv3dParams {
  ConvGeometry geometry;
  /// (out, in, k, k, k).
  Tensor<T> weight;
  /// (1, out, 1, 1, 1).
  Tensor<T> bias;
};

/// Cross-correlation (no kernel flip) with zero padding.
template <typename T>
Tensor<T> conv3d_forward(const Tensor<T>& input, const Conv3dParams<T>& p);

template <typename T>
struct ConvGrads {
  /// Empty when not requested.
  Tensor<T> input;
  Tensor<T> weight;
  Tensor<T> bias;
};

template <typename T>
ConvGrads<T> conv3d_backward(const Tensor<T>& grad_output, const Tensor<T>& input,
                             const Conv3dParams<T>& p, bool need_input_grad = true);

}  // namespace voxsem::nn
