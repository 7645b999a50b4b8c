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
#include <string_view>
#include <vector>

#include "voxsem/common/categories.hpp"
#include "voxsem/forge/mesh.hpp"
#include "voxsem/volume/geometry.hpp"

namespace voxsem::forge {

/// p' = R_y(yaw) * (scale .* p) + translation. Yaw multiples of 90 degrees
/// use exact rotation matrices so axis-aligned bounds stay exact.
struct SimilarityTransform {
  double yaw_degrees = 0.0;
  Vec3 scale{1.0, 1.0, 1.0};
  Vec3 translation;

  Mat3 rotation() const;
  Vec3 apply(const Vec3& p) const;
  Vec3 apply_inverse(const Vec3& p) const;
  double max_scale() const;
};

struct SceneObject {
  std::string mesh_id;
  Category category = Category::Objects;
  SimilarityTransform transform;
};

/// Axis-aligned room shell. Windows are zero-thickness rectangles lying in a
/// wall plane.
struct Room {
  Aabb box;
  std::vector<Aabb> windows;
};

struct Scene {
  Room room;
  std::vector<SceneObject> objects;

  /// Checks category, scale, containment and pairwise non-overlap
  /// invariants; throws ValidationError naming the offending object.
  void validate() const;
};

/// Procedural mesh library standing in for artist-made furniture. Meshes are
/// in object-local meters with their base on y = 0 and front facing +z.
const TriMesh& library_mesh(std::string_view mesh_id);
const std::vector<std::string>& library_mesh_ids();
Category library_category(std::string_view mesh_id);

/// World-space bounds of the transformed mesh.
Aabb object_bounds(const SceneObject& obj);
TriMesh transformed_mesh(const SceneObject& obj);

struct CountRange {
  int min = 0;
  int max = 0;
};

struct SceneParams {
  double width_min = 4.2;
  double width_max = 5.6;
  double depth_min = 4.2;
  double depth_max = 5.6;
  double height_min = 2.6;
  double height_max = 2.8;
  /// Indexed by category label; the Window entry counts windows.
  std::array<CountRange, kNumClasses> counts{};
  double scale_jitter = 0.15;
  int max_attempts = 400;

  static SceneParams defaults();
  /// Room shell only.
  static SceneParams shell_only();
};

/// Deterministic for a fixed (params, seed). Throws ValidationError naming
/// the category whose placement failed after max_attempts.
Scene generate_scene(const SceneParams& params, std::uint64_t seed);

/// Rotates the whole scene about the world vertical axis by q * 90 degrees.
Scene rotate_quarter_turns(const Scene& scene, int q);
Vec3 rotate_quarter_turns(const Vec3& p, int q);

std::string scene_to_json(const Scene& scene);
Scene scene_from_json(const std::string& text, const std::string& source);

}  // namespace voxsem::forge
