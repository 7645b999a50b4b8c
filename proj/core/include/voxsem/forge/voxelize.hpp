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
#include <vector>

#include "voxsem/forge/mesh.hpp"

namespace voxsem::forge {

inline constexpr int kObjectResolution = 128;

/// Solid occupancy of one mesh on a cubic lattice. The voxel size is chosen
/// so the largest mesh dimension spans the full resolution exactly; smaller
/// dimensions are centered.
class ObjectVoxelization {
 public:
  ObjectVoxelization() = default;
  ObjectVoxelization(int resolution, double voxel_size, const Vec3& origin);

  int resolution() const { return resolution_; }
  double voxel_size() const { return voxel_size_; }
  const Vec3& origin() const { return origin_; }

  bool occupied(int i, int j, int k) const {
    const auto idx = linear(i, j, k);
    return (bits_[idx >> 6] >> (idx & 63)) & 1u;
  }
  void set(int i, int j, int k) {
    const auto idx = linear(i, j, k);
    bits_[idx >> 6] |= std::uint64_t{1} << (idx & 63);
  }
  std::int64_t occupied_count() const;
  Vec3 voxel_center(int i, int j, int k) const {
    return origin_ + Vec3{(i + 0.5) * voxel_size_, (j + 0.5) * voxel_size_,
                          (k + 0.5) * voxel_size_};
  }

 private:
  std::int64_t linear(int i, int j, int k) const {
    return i + static_cast<std::int64_t>(resolution_) *
                   (j + static_cast<std::int64_t>(resolution_) * k);
  }

  int resolution_ = 0;
  double voxel_size_ = 0.0;
  Vec3 origin_;
  std::vector<std::uint64_t> bits_;
};

/// Marks every voxel a triangle touches, then flood-fills empty space from
/// the grid boundary (6-connected); voxels the fill cannot reach are interior
/// and become occupied. Throws ValidationError on an empty mesh.
ObjectVoxelization voxelize_object(const TriMesh& mesh,
                                   int resolution = kObjectResolution);

/// Separating-axis test between a triangle and an axis-aligned box.
bool triangle_box_overlap(const Vec3& box_center, const Vec3& half_size,
                          const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace voxsem::forge
