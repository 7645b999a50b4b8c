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

#include "voxsem/forge/voxelize.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "voxsem/common/error.hpp"

namespace voxsem::forge {

ObjectVoxelization::ObjectVoxelization(int resolution, double voxel_size,
                                       const Vec3& origin)
    : resolution_(resolution), voxel_size_(voxel_size), origin_(origin) {
  const auto n = static_cast<std::int64_t>(resolution) * resolution * resolution;
  bits_.assign(static_cast<std::size_t>((n + 63) / 64), 0);
}

std::int64_t ObjectVoxelization::occupied_count() const {
  std::int64_t n = 0;
  for (auto w : bits_) n += std::popcount(w);
  return n;
}

namespace {

bool axis_separates(const Vec3& axis, const Vec3& v0, const Vec3& v1,
                    const Vec3& v2, const Vec3& h) {
  const double p0 = dot(axis, v0), p1 = dot(axis, v1), p2 = dot(axis, v2);
  const double r = h.x * std::abs(axis.x) + h.y * std::abs(axis.y) +
                   h.z * std::abs(axis.z);
  return std::min({p0, p1, p2}) > r || std::max({p0, p1, p2}) < -r;
}

}  // namespace

bool triangle_box_overlap(const Vec3& box_center, const Vec3& h, const Vec3& a,
                          const Vec3& b, const Vec3& c) {
  const Vec3 v0 = a - box_center, v1 = b - box_center, v2 = c - box_center;
  // Box face normals.
  for (int axis = 0; axis < 3; ++axis) {
    const double lo = std::min({v0[axis], v1[axis], v2[axis]});
    const double hi = std::max({v0[axis], v1[axis], v2[axis]});
    if (lo > h[axis] || hi < -h[axis]) return false;
  }
  const Vec3 e0 = v1 - v0, e1 = v2 - v1, e2 = v0 - v2;
  // Triangle plane.
  const Vec3 n = cross(e0, e1);
  const double r = h.x * std::abs(n.x) + h.y * std::abs(n.y) + h.z * std::abs(n.z);
  if (std::abs(dot(n, v0)) > r) return false;
  // Edge cross products.
  const Vec3 units[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (const Vec3& e : {e0, e1, e2}) {
    for (const Vec3& u : units) {
      const Vec3 axis = cross(u, e);
      if (dot(axis, axis) == 0.0) continue;
      if (axis_separates(axis, v0, v1, v2, h)) return false;
    }
  }
  return true;
}

ObjectVoxelization voxelize_object(const TriMesh& mesh, int resolution) {
  if (mesh.empty()) throw ValidationError("cannot voxelize an empty mesh");
  if (resolution < 1) throw ValidationError("voxelization resolution must be >= 1");
  mesh.validate();
  const Aabb box = mesh.bounds();
  const Vec3 ext = box.extent();
  const double largest = std::max({ext.x, ext.y, ext.z});
  if (!(largest > 0.0)) throw ValidationError("mesh has zero extent");
  const double s = largest / resolution;
  const double span = resolution * s;
  const Vec3 center = box.center();
  Vec3 origin = center - Vec3{span, span, span} * 0.5;
  // Keep the tight axis anchored exactly on the mesh bounds.
  for (int axis = 0; axis < 3; ++axis) {
    if (ext[axis] == largest) {
      if (axis == 0) origin.x = box.min.x;
      if (axis == 1) origin.y = box.min.y;
      if (axis == 2) origin.z = box.min.z;
    }
  }
  ObjectVoxelization vox(resolution, s, origin);

  const int n = resolution;
  const double inflate = 1e-9 * s;
  const Vec3 half{0.5 * s + inflate, 0.5 * s + inflate, 0.5 * s + inflate};
  auto cell = [&](double coord, double o) {
    return std::clamp(static_cast<int>(std::floor((coord - o) / s)), 0, n - 1);
  };
  for (const auto& t : mesh.triangles) {
    const Vec3& a = mesh.vertices[t[0]];
    const Vec3& b = mesh.vertices[t[1]];
    const Vec3& c = mesh.vertices[t[2]];
    const Vec3 lo = component_min(a, component_min(b, c));
    const Vec3 hi = component_max(a, component_max(b, c));
    // One extra cell on each side catches faces lying on cell boundaries.
    const int i0 = std::max(0, cell(lo.x, origin.x) - 1), i1 = std::min(n - 1, cell(hi.x, origin.x) + 1);
    const int j0 = std::max(0, cell(lo.y, origin.y) - 1), j1 = std::min(n - 1, cell(hi.y, origin.y) + 1);
    const int k0 = std::max(0, cell(lo.z, origin.z) - 1), k1 = std::min(n - 1, cell(hi.z, origin.z) + 1);
    for (int k = k0; k <= k1; ++k) {
      for (int j = j0; j <= j1; ++j) {
        for (int i = i0; i <= i1; ++i) {
          if (vox.occupied(i, j, k)) continue;
          if (triangle_box_overlap(vox.voxel_center(i, j, k), half, a, b, c)) {
            vox.set(i, j, k);
          }
        }
      }
    }
  }

  // Exterior flood fill from every empty boundary voxel.
  const auto total = static_cast<std::size_t>(n) * n * n;
  std::vector<std::uint8_t> outside(total, 0);
  std::vector<std::int32_t> stack;
  auto idx = [n](int i, int j, int k) {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(n) * (j + static_cast<std::size_t>(n) * k);
  };
  auto seed = [&](int i, int j, int k) {
    const auto id = idx(i, j, k);
    if (!outside[id] && !vox.occupied(i, j, k)) {
      outside[id] = 1;
      stack.push_back(static_cast<std::int32_t>(id));
    }
  };
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      seed(0, a, b);
      seed(n - 1, a, b);
      seed(a, 0, b);
      seed(a, n - 1, b);
      seed(a, b, 0);
      seed(a, b, n - 1);
    }
  }
  while (!stack.empty()) {
    const auto id = static_cast<std::size_t>(stack.back());
    stack.pop_back();
    const int i = static_cast<int>(id % n);
    const int j = static_cast<int>((id / n) % n);
    const int k = static_cast<int>(id / (static_cast<std::size_t>(n) * n));
    if (i > 0) seed(i - 1, j, k);
    if (i + 1 < n) seed(i + 1, j, k);
    if (j > 0) seed(i, j - 1, k);
    if (j + 1 < n) seed(i, j + 1, k);
    if (k > 0) seed(i, j, k - 1);
    if (k + 1 < n) seed(i, j, k + 1);
  }
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        if (!outside[idx(i, j, k)]) vox.set(i, j, k);
      }
    }
  }
  return vox;
}

}  // namespace voxsem::forge
