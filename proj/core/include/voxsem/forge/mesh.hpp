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
#include <vector>

#include "voxsem/volume/geometry.hpp"

namespace voxsem::forge {

struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;

  /// Throws ValidationError on out-of-range indices or zero-area triangles.
  void validate() const;
  bool empty() const { return triangles.empty(); }
  Aabb bounds() const;
  void append(const TriMesh& other);
};

/// Closed axis-aligned box with outward-facing triangles.
TriMesh make_box(const Vec3& min, const Vec3& max);

/// Single quad spanning the two in-plane axes of a degenerate box.
TriMesh make_quad(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

/// Subdivided icosahedron of the given radius.
TriMesh make_icosphere(const Vec3& center, double radius, int subdivisions);

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace voxsem::forge
