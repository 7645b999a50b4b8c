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

#include "voxsem/volume/camera.hpp"
#include "voxsem/volume/grid.hpp"

namespace voxsem {

/// Visibility class of a voxel with respect to one depth observation.
enum class VoxelState : std::uint8_t {
  ObservedFree = 0,
  Surface = 1,
  Occluded = 2,
  OutsideFov = 3,
  OutsideRoom = 4,
};
inline constexpr int kVoxelStateCount = 5;

const char* to_string(VoxelState s);

/// Classifies every voxel center. OutsideRoom takes precedence; voxels that
/// project behind the camera, outside the image or onto an invalid pixel are
/// OutsideFov; the rest compare camera depth z with the pixel depth D:
/// z < D - band is ObservedFree, |z - D| <= band is Surface, otherwise
/// Occluded. A non-positive surface_band selects one voxel_size.
VoxelGrid<VoxelState> classify_voxels(const DepthMap& depth,
                                      const PinholeCamera& cam,
                                      const GridSpec& spec,
                                      const Aabb& room_bounds,
                                      double surface_band = 0.0);

}  // namespace voxsem
