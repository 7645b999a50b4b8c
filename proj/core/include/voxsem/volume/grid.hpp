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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "voxsem/volume/geometry.hpp"

namespace voxsem {

struct GridDims {
  int nx = 1;
  int ny = 1;
  int nz = 1;

  std::int64_t count() const {
    return static_cast<std::int64_t>(nx) * ny * nz;
  }
  bool operator==(const GridDims&) const = default;
};

struct Index3 {
  int i = 0;
  int j = 0;
  int k = 0;
  bool operator==(const Index3&) const = default;
};

/// Dense axis-aligned lattice. `origin` is the world-space minimum corner.
struct GridSpec {
  Vec3 origin;
  double voxel_size = 0.02;
  GridDims dims{240, 144, 240};

  /// Throws ValidationError unless voxel_size > 0 and every dim >= 1.
  void validate() const;
  std::int64_t count() const { return dims.count(); }
  bool contains(const Index3& v) const {
    return v.i >= 0 && v.j >= 0 && v.k >= 0 && v.i < dims.nx &&
           v.j < dims.ny && v.k < dims.nz;
  }
  /// x-fastest linear index.
  std::int64_t linear(int i, int j, int k) const {
    return i + static_cast<std::int64_t>(dims.nx) *
                   (j + static_cast<std::int64_t>(dims.ny) * k);
  }
  std::int64_t linear(const Index3& v) const { return linear(v.i, v.j, v.k); }
  Index3 unlinear(std::int64_t idx) const;
  Aabb bounds() const;
  bool operator==(const GridSpec&) const = default;
};

/// Full-scale network input: 240 x 144 x 240 voxels of 2 cm.
GridSpec full_scale_grid(const Vec3& origin = {});

/// floor((p - origin) / voxel_size); the result may lie outside dims.
Index3 world_to_grid(const Vec3& p, const GridSpec& spec);

/// Center of voxel v; throws ValidationError for indices outside dims.
Vec3 grid_to_world(const Index3& v, const GridSpec& spec);
Vec3 grid_to_world(int i, int j, int k, const GridSpec& spec);

/// Center of voxel v without a range check; hot loops use this form.
inline Vec3 voxel_center(const GridSpec& spec, int i, int j, int k) {
  return {spec.origin.x + (i + 0.5) * spec.voxel_size,
          spec.origin.y + (j + 0.5) * spec.voxel_size,
          spec.origin.z + (k + 0.5) * spec.voxel_size};
}

template <typename P>
struct VoxelGrid {
  GridSpec spec;
  std::vector<P> data;

  VoxelGrid() = default;
  explicit VoxelGrid(const GridSpec& s, P fill = P{})
      : spec(s), data(static_cast<std::size_t>(s.count()), fill) {}

  P& at(int i, int j, int k) { return data[spec.linear(i, j, k)]; }
  const P& at(int i, int j, int k) const { return data[spec.linear(i, j, k)]; }
  P& operator[](std::int64_t idx) { return data[static_cast<std::size_t>(idx)]; }
  const P& operator[](std::int64_t idx) const {
    return data[static_cast<std::size_t>(idx)];
  }
  bool consistent() const {
    return static_cast<std::int64_t>(data.size()) == spec.count();
  }
};

}  // namespace voxsem
