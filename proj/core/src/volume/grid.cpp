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

#include "voxsem/volume/grid.hpp"

#include <cmath>
#include <string>

#include "voxsem/common/error.hpp"

namespace voxsem {

void GridSpec::validate() const {
  if (!(voxel_size > 0.0) || !std::isfinite(voxel_size)) {
    throw ValidationError("grid voxel_size must be positive, got " +
                          std::to_string(voxel_size));
  }
  if (dims.nx < 1 || dims.ny < 1 || dims.nz < 1) {
    throw ValidationError("grid dims must be >= 1, got " +
                          std::to_string(dims.nx) + "x" +
                          std::to_string(dims.ny) + "x" +
                          std::to_string(dims.nz));
  }
  if (!origin.finite()) throw ValidationError("grid origin must be finite");
}

Index3 GridSpec::unlinear(std::int64_t idx) const {
  const auto nx = static_cast<std::int64_t>(dims.nx);
  const auto ny = static_cast<std::int64_t>(dims.ny);
  return {static_cast<int>(idx % nx), static_cast<int>((idx / nx) % ny),
          static_cast<int>(idx / (nx * ny))};
}

Aabb GridSpec::bounds() const {
  return {origin, origin + Vec3{dims.nx * voxel_size, dims.ny * voxel_size,
                                dims.nz * voxel_size}};
}

GridSpec full_scale_grid(const Vec3& origin) {
  return GridSpec{origin, 0.02, {240, 144, 240}};
}

Index3 world_to_grid(const Vec3& p, const GridSpec& spec) {
  const Vec3 r = (p - spec.origin) / spec.voxel_size;
  return {static_cast<int>(std::floor(r.x)), static_cast<int>(std::floor(r.y)),
          static_cast<int>(std::floor(r.z))};
}

Vec3 grid_to_world(const Index3& v, const GridSpec& spec) {
  if (!spec.contains(v)) {
    throw ValidationError("voxel index (" + std::to_string(v.i) + ", " +
                          std::to_string(v.j) + ", " + std::to_string(v.k) +
                          ") outside grid dims");
  }
  return voxel_center(spec, v.i, v.j, v.k);
}

Vec3 grid_to_world(int i, int j, int k, const GridSpec& spec) {
  return grid_to_world(Index3{i, j, k}, spec);
}

}  // namespace voxsem
