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
#include <map>
#include <string>

#include "voxsem/forge/scene.hpp"
#include "voxsem/forge/voxelize.hpp"
#include "voxsem/volume/grid.hpp"

namespace voxsem::forge {

/// Per-voxel class label 0..11 (0 = empty).
using LabelGrid = VoxelGrid<std::uint8_t>;

using VoxelizationLibrary = std::map<std::string, ObjectVoxelization, std::less<>>;

/// Voxelizes every library mesh referenced by the scene.
VoxelizationLibrary voxelize_scene_meshes(const Scene& scene,
                                          int resolution = kObjectResolution);

/// Ground-truth labels on `spec`. Walls, floor, ceiling and windows are
/// one-voxel-thick slabs just inside the room box. A voxel inside an
/// object's transformed bounds takes the object category when its center
/// lies closer than s * max(scale) to an occupied object-voxel center. Later
/// objects overwrite earlier ones. Throws ValidationError when a referenced
/// mesh has no voxelization.
LabelGrid compose_scene_labels(const Scene& scene,
                               const VoxelizationLibrary& voxelizations,
                               const GridSpec& spec);

/// Throws ValidationError if a label lies outside 0..11.
void validate_labels(const LabelGrid& labels);

}  // namespace voxsem::forge
