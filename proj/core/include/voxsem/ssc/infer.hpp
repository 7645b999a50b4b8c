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

#include <filesystem>

#include "voxsem/neural/network.hpp"
#include "voxsem/ssc/sampling.hpp"
#include "voxsem/volume/camera.hpp"

namespace voxsem::ssc {

struct Prediction {
  /// Per-voxel argmax at output resolution, ties to the lower class.
  LabelGrid labels;
  /// (1, classes, d, h, w) softmax probabilities.
  nn::Tensor<float> probabilities;
};

/// Builds a network for `spec` and loads the checkpoint, rejecting any name
/// or shape mismatch.
nn::Network<float> load_network(const nn::NetworkSpec& spec,
                                const std::filesystem::path& checkpoint);

/// Forward pass on a prepared input tensor. `input_grid` is the grid the
/// input was encoded on.
Prediction predict(nn::Network<float>& net, const nn::Tensor<float>& input,
                   const GridSpec& input_grid);

/// Depth map to prediction: visibility, accurate TSDF, flip, normalize,
/// forward, argmax.
Prediction infer(nn::Network<float>& net, const DepthMap& depth, const PinholeCamera& cam,
                 const GridSpec& input_grid, const Aabb& room, double d_max);

}  // namespace voxsem::ssc
