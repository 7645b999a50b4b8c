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

#include "voxsem/common/categories.hpp"
#include "voxsem/neural/network.hpp"
#include "voxsem/volume/grid.hpp"

namespace voxsem::ssc {

/// Output resolution is input / kOutputReduction on every axis.
inline constexpr int kOutputReduction = 4;

/// Name of the pre-context feature layer and of the context-module output.
inline constexpr const char* kFeatureLayer = "res2_relu";
inline constexpr const char* kContextLayer = "ctx3_relu";

struct SscnetOptions {
  double channel_multiplier = 1.0;
  int num_classes = kNumClasses;
};

/// Stem conv (k7, stride 2), residual block, 2x max-pool, residual block,
/// three dilated residual context blocks, multi-scale channel concat and a
/// 1x1x1 head. Throws ValidationError when an input dim is not divisible by
/// 4 or a channel width rounds below 1.
nn::NetworkSpec build_sscnet(const GridDims& input_dims, double voxel_size,
                             const SscnetOptions& options = {});
nn::NetworkSpec build_sscnet(const GridSpec& input_grid, const SscnetOptions& options = {});

/// Checks the output-layer channel count and the exact 4x reduction.
void validate_sscnet(const nn::NetworkSpec& spec, int num_classes = kNumClasses);

GridDims output_dims(const GridDims& input_dims);

/// Output-resolution grid: voxel v covers input voxels 4v .. 4v+3.
GridSpec output_grid(const GridSpec& input_grid);

}  // namespace voxsem::ssc
