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

#include "voxsem/forge/labels.hpp"

#include <algorithm>
#include <cmath>

#include "voxsem/common/error.hpp"

namespace voxsem::forge {

VoxelizationLibrary voxelize_scene_meshes(const Scene& scene, int resolution) {
  VoxelizationLibrary lib;
  for (const auto& o : scene.objects) {
    if (lib.find(o.mesh_id) == lib.end()) {
      lib.emplace(o.mesh_id, voxelize_object(library_mesh(o.mesh_id), resolution));
    }
  }
  return lib;
}

namespace {

// Index range of voxels whose centers lie inside [lo, hi] on one axis.
void center_range(double lo, double hi, double origin, double vs, int n,
                  int& first, int& last) {
  first = std::max(0, static_cast<int>(std::ceil((lo - origin) / vs - 0.5)));
  last = std::min(n - 1, static_cast<int>(std::floor((hi - origin) / vs - 0.5)));
}

void label_structure(const Scene& scene, LabelGrid& out) {
  const GridSpec& spec = out.spec;
  const Aabb& r = scene.room.box;
  const double vs = spec.voxel_size;
  const auto& d = spec.dims;
  for (int k = 0; k < d.nz; ++k) {
    for (int j = 0; j < d.ny; ++j) {
      for (int i = 0; i < d.nx; ++i) {
        const Vec3 p = voxel_center(spec, i, j, k);
        if (!r.contains(p)) continue;
        std::uint8_t label = 0;
        const bool wall_x = p.x - r.min.x < vs || r.max.x - p.x < vs;
        const bool wall_z = p.z - r.min.z < vs || r.max.z - p.z < vs;
        if (wall_x || wall_z) {
          label = label_of(Category::Wall);
          for (const auto& w : scene.room.windows) {
            const bool on_x_wall = w.extent().x == 0.0;
            const bool hit =
                on_x_wall
                    ? wall_x && std::abs(p.x - w.min.x) < vs && p.y >= w.min.y &&
                          p.y <= w.max.y && p.z >= w.min.z && p.z <= w.max.z
                    : wall_z && std::abs(p.z - w.min.z) < vs && p.y >= w.min.y &&
                          p.y <= w.max.y && p.x >= w.min.x && p.x <= w.max.x;
            if (hit) label = label_of(Category::Window);
          }
        }
        if (p.y - r.min.y < vs) label = label_of(Category::Floor);
        if (r.max.y - p.y < vs) label = label_of(Category::Ceiling);
        if (label != 0) out.at(i, j, k) = label;
      }
    }
  }
}

void label_object(const SceneObject& obj, const ObjectVoxelization& vox,
                  LabelGrid& out) {
  const GridSpec& spec = out.spec;
  const Aabb bounds = object_bounds(obj);
  int i0, i1, j0, j1, k0, k1;
  center_range(bounds.min.x, bounds.max.x, spec.origin.x, spec.voxel_size, spec.dims.nx, i0, i1);
  center_range(bounds.min.y, bounds.max.y, spec.origin.y, spec.voxel_size, spec.dims.ny, j0, j1);
  center_range(bounds.min.z, bounds.max.z, spec.origin.z, spec.voxel_size, spec.dims.nz, k0, k1);
  if (i0 > i1 || j0 > j1 || k0 > k1) return;

  const auto& xf = obj.transform;
  const double s = vox.voxel_size();
  const double threshold = s * xf.max_scale();
  const double threshold_sq = threshold * threshold;
  const int n = vox.resolution();
  // Search half-width per local axis, in object voxels.
  const Vec3 reach{xf.max_scale() / xf.scale.x, xf.max_scale() / xf.scale.y,
                   xf.max_scale() / xf.scale.z};
  const std::uint8_t label = label_of(obj.category);

  for (int k = k0; k <= k1; ++k) {
    for (int j = j0; j <= j1; ++j) {
      for (int i = i0; i <= i1; ++i) {
        const Vec3 q = xf.apply_inverse(voxel_center(spec, i, j, k));
        const Vec3 g = (q - vox.origin()) / s - Vec3{0.5, 0.5, 0.5};
        const int a0 = std::max(0, static_cast<int>(std::floor(g.x - reach.x)));
        const int a1 = std::min(n - 1, static_cast<int>(std::ceil(g.x + reach.x)));
        const int b0 = std::max(0, static_cast<int>(std::floor(g.y - reach.y)));
        const int b1 = std::min(n - 1, static_cast<int>(std::ceil(g.y + reach.y)));
        const int c0 = std::max(0, static_cast<int>(std::floor(g.z - reach.z)));
        const int c1 = std::min(n - 1, static_cast<int>(std::ceil(g.z + reach.z)));
        bool hit = false;
        for (int c = c0; c <= c1 && !hit; ++c) {
          for (int b = b0; b <= b1 && !hit; ++b) {
            for (int a = a0; a <= a1 && !hit; ++a) {
              if (!vox.occupied(a, b, c)) continue;
              // World distance: rotation is norm-preserving, scale is not.
              const Vec3 diff = hadamard(xf.scale, vox.voxel_center(a, b, c) - q);
              hit = dot(diff, diff) < threshold_sq;
            }
          }
        }
        if (hit) out.at(i, j, k) = label;
      }
    }
  }
}

}  // namespace

LabelGrid compose_scene_labels(const Scene& scene,
                               const VoxelizationLibrary& voxelizations,
                               const GridSpec& spec) {
  spec.validate();
  LabelGrid out(spec, 0);
  label_structure(scene, out);
  for (const auto& obj : scene.objects) {
    auto it = voxelizations.find(obj.mesh_id);
    if (it == voxelizations.end()) {
      throw ValidationError("no voxelization for mesh '" + obj.mesh_id + "'");
    }
    label_object(obj, it->second, out);
  }
  return out;
}

void validate_labels(const LabelGrid& labels) {
  if (!labels.consistent()) {
    throw ValidationError("label grid data length does not match its dims");
  }
  for (auto l : labels.data) {
    if (l >= kNumClasses) {
      throw ValidationError("label " + std::to_string(l) + " out of range 0..11");
    }
  }
}

}  // namespace voxsem::forge
