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

#include <string>
#include <vector>

#include "voxsem/forge/dataset.hpp"
#include "voxsem/neural/network.hpp"
#include "voxsem/ssc/sampling.hpp"

namespace voxsem::ssc {

/// One training volume: the normalized TSDF input at full resolution and
/// targets downsampled to the network output resolution.
struct TrainingSample {
  std::string name;
  nn::Tensor<float> input;
  LabelGrid labels;
  StateGrid states;
};

/// (1, 1, nz, ny, nx) copy of a grid; the memory layouts coincide.
nn::Tensor<float> grid_to_tensor(const VoxelGrid<float>& grid);

/// Occupancy-only target: every non-empty label becomes 1.
LabelGrid binarize_labels(const LabelGrid& labels);

/// Loads each manifest triple, checks its grids against the network input
/// and downsamples the targets. With `binary` set, labels are binarized.
/// Throws ValidationError with expected and found shapes on mismatch.
std::vector<TrainingSample> load_training_set(const forge::Manifest& manifest,
                                              const nn::NetworkSpec& spec,
                                              bool binary = false);

}  // namespace voxsem::ssc
