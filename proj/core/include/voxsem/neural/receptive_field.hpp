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

#include "voxsem/neural/network.hpp"

namespace voxsem::nn {

struct LayerReceptiveField {
  std::string name;
  /// Side of the cubic input region that can influence one output voxel.
  int voxels = 1;
  /// Input-voxel spacing between adjacent outputs of this layer.
  int jump = 1;
  double meters = 0.0;
};

/// Composes RF = RF_in + (support - 1) * jump_in and jump = jump_in * stride
/// per layer, where conv support is dilation * (kernel - 1) + 1 and pooling
/// support is the window. Merge layers take the largest input RF and
/// require equal jumps. Entries follow spec.layers order.
std::vector<LayerReceptiveField> receptive_field(const NetworkSpec& spec);
const LayerReceptiveField& receptive_field_of(const std::vector<LayerReceptiveField>& rf,
                                              const std::string& name);

/// Exact set of input voxels (one channel, x-fastest over the input grid)
/// connected to output voxel (z, y, x) of `layer`, accounting for padding
/// and borders. Pooling contributes its whole window.
std::vector<std::uint8_t> receptive_set(const NetworkSpec& spec, const std::string& layer,
                                        int z, int y, int x);

}  // namespace voxsem::nn
