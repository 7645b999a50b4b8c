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

#include "voxsem/volume/grid.hpp"
#include "voxsem/volume/visibility.hpp"

namespace voxsem::ssc {

using LabelGrid = VoxelGrid<std::uint8_t>;
using StateGrid = VoxelGrid<VoxelState>;
/// Loss weights, 0 or 1 per voxel.
using WeightGrid = VoxelGrid<std::uint8_t>;

struct DownsampledTargets {
  LabelGrid labels;
  StateGrid states;
};

/// Per factor^3 block: label is the majority label counting empty, ties to
/// the smaller label; state is Occluded if any child is Occluded, else
/// Surface if any child is Surface, else the majority state with ties to
/// the smaller value. The output grid keeps the origin and scales the voxel
/// size by `factor`.
DownsampledTargets downsample_labels(const LabelGrid& labels, const StateGrid& states,
                                     int factor = 4);

struct BalanceReport {
  /// Occupied voxels in Surface or Occluded state.
  std::int64_t occupied = 0;
  /// Empty voxels in Occluded state.
  std::int64_t available_empty = 0;
  std::int64_t sampled_empty = 0;
  /// Set when there are no occupied voxels.
  std::string warning;
};

struct BalancedWeights {
  WeightGrid weights;
  BalanceReport report;
};

/// Weight 1 on every occupied Surface/Occluded voxel and on
/// min(2N, available) Occluded empty voxels drawn uniformly without
/// replacement; 0 everywhere else.
BalancedWeights balance_sample(const LabelGrid& labels, const StateGrid& states,
                               std::uint64_t seed);

}  // namespace voxsem::ssc
