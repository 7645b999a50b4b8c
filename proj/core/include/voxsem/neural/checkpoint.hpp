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

#include "voxsem/neural/network.hpp"

namespace voxsem::nn {

inline constexpr std::uint32_t kCheckpointVersion = 1;

/// "SSCW", u32 version, u32 tensor count, then per tensor: u32 name length,
/// name bytes, u32 rank, rank x u32 dims, f32 values. Little-endian.
std::vector<std::uint8_t> encode_checkpoint(const std::vector<NamedTensor<float>>& tensors);
std::vector<NamedTensor<float>> decode_checkpoint(const std::vector<std::uint8_t>& bytes,
                                                  const std::string& source);

void write_checkpoint(const std::filesystem::path& path,
                      const std::vector<NamedTensor<float>>& tensors);
std::vector<NamedTensor<float>> read_checkpoint(const std::filesystem::path& path);

}  // namespace voxsem::nn
