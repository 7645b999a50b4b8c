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

#include "voxsem/volume/visibility.hpp"

#include <cmath>

#include "voxsem/common/error.hpp"
#include "voxsem/common/parallel.hpp"

namespace voxsem {

const char* to_string(VoxelState s) {
  switch (s) {
    case VoxelState::ObservedFree: return "observed_free";
    case VoxelState::Surface: return "surface";
    case VoxelState::Occluded: return "occluded";
    case VoxelState::OutsideFov: return "outside_fov";
    case VoxelState::OutsideRoom: return "outside_room";
  }
  return "unknown";
}

VoxelGrid<VoxelState> classify_voxels(const DepthMap& depth,
                                      const PinholeCamera& cam,
                                      const GridSpec& spec,
                                      const Aabb& room_bounds,
                                      double surface_band) {
  spec.validate();
  cam.validate();
  depth.validate();
  if (depth.width != cam.width || depth.height != cam.height) {
    throw ValidationError("depth map and camera resolution differ");
  }
  const double band = surface_band > 0.0 ? surface_band : spec.voxel_size;

  VoxelGrid<VoxelState> out(spec, VoxelState::OutsideFov);
  const auto& d = spec.dims;
  parallel_for(d.nz, [&](std::int64_t k0, std::int64_t k1) {
    for (int k = static_cast<int>(k0); k < k1; ++k) {
      for (int j = 0; j < d.ny; ++j) {
        for (int i = 0; i < d.nx; ++i) {
          const Vec3 p = voxel_center(spec, i, j, k);
          VoxelState s = VoxelState::OutsideFov;
          if (!room_bounds.contains(p)) {
            s = VoxelState::OutsideRoom;
          } else if (const auto hit = project(cam, p)) {
            const double dp = depth.at(hit->u, hit->v);
            if (dp > 0.0) {
              if (hit->z < dp - band) {
                s = VoxelState::ObservedFree;
              } else if (std::abs(hit->z - dp) <= band) {
                s = VoxelState::Surface;
              } else {
                s = VoxelState::Occluded;
              }
            }
          }
          out.at(i, j, k) = s;
        }
      }
    }
  });
  return out;
}

}  // namespace voxsem
