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

#include <array>
#include <cstdint>
#include <string>

#include "voxsem/common/categories.hpp"
#include "voxsem/common/png_io.hpp"
#include "voxsem/volume/grid.hpp"
#include "voxsem/volume/visibility.hpp"

namespace voxsem::cli {

using Rgb = std::array<std::uint8_t, 3>;

/// Fixed per-class colors, indexed by label.
///   0 empty      white        6 bed        pink
///   1 ceiling    light blue   7 sofa       purple
///   2 floor      tan          8 table      orange
///   3 wall       grey         9 tvs        black
///   4 window     cyan        10 furniture  brown
///   5 chair      green       11 objects    yellow
extern const std::array<Rgb, kNumClasses> kClassPalette;
/// Indexed by VoxelState.
extern const std::array<Rgb, kVoxelStateCount> kStatePalette;

/// ASCII PLY with one triangulated cube (8 vertices, 12 faces) per
/// non-empty voxel, colored by class.
std::string voxel_ply(const VoxelGrid<std::uint8_t>& labels);
/// OBJ with per-vertex colors ("v x y z r g b") and the same cube layout.
std::string voxel_obj(const VoxelGrid<std::uint8_t>& labels);

/// Slices perpendicular to `axis` (0 = x, 1 = y, 2 = z) tiled left to right,
/// top to bottom with a one-pixel black gutter. Within a tile, the column
/// is the first remaining axis and the row the second (y slices: column x,
/// row z). Scalars map through a diverging colormap scaled by the largest
/// magnitude: negative toward blue, positive toward red, zero white.
RgbImage scalar_montage(const VoxelGrid<float>& grid, int axis);
RgbImage label_montage(const VoxelGrid<std::uint8_t>& labels, int axis,
                       const Rgb* palette, int palette_size);

int axis_index(const std::string& axis);

}  // namespace voxsem::cli
