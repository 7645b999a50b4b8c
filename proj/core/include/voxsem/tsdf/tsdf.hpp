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
#include <filesystem>
#include <vector>

#include "voxsem/volume/camera.hpp"
#include "voxsem/volume/grid.hpp"
#include "voxsem/volume/visibility.hpp"
#include "voxsem/volume/voxb.hpp"

namespace voxsem::tsdf {

enum class TsdfMode : std::uint8_t { Projective = 0, Accurate = 1, Flipped = 2 };

const char* to_string(TsdfMode m);

/// Truncation distance used for network inputs, in meters.
inline constexpr double kDefaultTruncation = 0.24;

struct TsdfGrid {
  VoxelGrid<float> values;
  double d_max = kDefaultTruncation;
  TsdfMode mode = TsdfMode::Accurate;
};

/// Line-of-sight TSDF: clamp(D_pixel - z_voxel, -d_max, d_max) from the pixel
/// each voxel projects to. Voxels that do not project onto a valid pixel get
/// +d_max.
TsdfGrid projective_tsdf(const DepthMap& depth, const PinholeCamera& cam,
                         const GridSpec& spec,
                         double d_max = kDefaultTruncation);

/// View-independent TSDF: distance from each voxel center to the nearest
/// back-projected surface point anywhere in the depth map, clamped to d_max.
/// Occluded voxels are negative; every other visible state is positive and
/// OutsideRoom voxels are +d_max. Throws ValidationError("no observed
/// surface") when the depth map has no valid pixel.
TsdfGrid accurate_tsdf(const DepthMap& depth, const PinholeCamera& cam,
                       const GridSpec& spec, double d_max,
                       const VoxelGrid<VoxelState>& states);

/// sign(d) * (d_max - |d|) with sign(0) = +1, so magnitude peaks on the
/// surface and vanishes at truncation. Rejects already-flipped input.
TsdfGrid flip_tsdf(const TsdfGrid& t);

/// Values divided by d_max, in [-1, 1].
VoxelGrid<float> normalize(const TsdfGrid& t);

/// VOXB version 2: scalar payload with the mode byte and d_max in the
/// header.
std::vector<std::uint8_t> encode_tsdf(const TsdfGrid& t);

/// Reads mode and d_max from a version 2 header; d_max is widened from the
/// stored f32.
TsdfGrid tsdf_from_voxb(const VoxbFile& f, const std::string& source);
TsdfGrid load_tsdf(const std::filesystem::path& path);

struct EncodedView {
  TsdfGrid tsdf;
  VoxelGrid<VoxelState> states;
};

/// Depth map to network input: visibility states, then the projective or
/// accurate TSDF, flipped unless `flip` is false.
EncodedView encode_view(const DepthMap& depth, const PinholeCamera& cam,
                        const GridSpec& spec, const Aabb& room_bounds,
                        double d_max = kDefaultTruncation,
                        TsdfMode mode = TsdfMode::Accurate, bool flip = true);

}  // namespace voxsem::tsdf
