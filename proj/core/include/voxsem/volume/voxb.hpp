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

// VOXB voxel-grid container.
//
//   offset  size  field
//   0       4     magic "VOXB"
//   4       4     u32 version (1, or 2 for TSDF volumes)
//   8       12    u32 nx, ny, nz
//   20      4     f32 voxel_size
//   24      12    f32 origin x, y, z
//   36      1     u8 payload tag: 0 = f32 scalar, 1 = u8 label, 2 = u8 state
//   37      1     u8 mode (version 2 only)
//   38      4     f32 truncation d_max (version 2 only)
//   ...           payload, little-endian, x-fastest

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "voxsem/volume/grid.hpp"
#include "voxsem/volume/visibility.hpp"

namespace voxsem {

enum class VoxbPayload : std::uint8_t { Scalar = 0, Label = 1, State = 2 };

const char* to_string(VoxbPayload p);

struct VoxbFile {
  std::uint32_t version = 1;
  GridSpec spec;
  VoxbPayload payload = VoxbPayload::Scalar;
  std::optional<std::uint8_t> mode;
  std::optional<float> d_max;
  std::vector<float> scalars;      // Scalar payload
  std::vector<std::uint8_t> bytes; // Label and State payloads
};

/// Rounds origin and voxel size to the f32 values the file stores, so a grid
/// spec survives a save/load cycle unchanged.
GridSpec quantize_to_f32(const GridSpec& spec);

struct VoxbTsdfHeader {
  std::uint8_t mode = 0;
  float d_max = 0.0f;
};

/// Version 1 without `tsdf`, version 2 with it.
std::vector<std::uint8_t> encode_voxb(const VoxelGrid<float>& grid,
                                      std::optional<VoxbTsdfHeader> tsdf = {});
std::vector<std::uint8_t> encode_voxb(const VoxelGrid<std::uint8_t>& labels);
std::vector<std::uint8_t> encode_voxb(const VoxelGrid<VoxelState>& states);

/// Validates magic, version, header fields and payload length; throws
/// ValidationError naming `source` on any mismatch.
VoxbFile decode_voxb(const std::vector<std::uint8_t>& bytes,
                     const std::string& source);

VoxbFile read_voxb(const std::filesystem::path& path);

VoxelGrid<float> scalar_grid(const VoxbFile& f, const std::string& source);
VoxelGrid<std::uint8_t> label_grid(const VoxbFile& f, const std::string& source);
VoxelGrid<VoxelState> state_grid(const VoxbFile& f, const std::string& source);

VoxelGrid<std::uint8_t> load_label_grid(const std::filesystem::path& path);
VoxelGrid<VoxelState> load_state_grid(const std::filesystem::path& path);

}  // namespace voxsem
