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

#include "voxsem/forge/scene.hpp"
#include "voxsem/volume/camera.hpp"

namespace voxsem::forge {

struct LabeledTriangle {
  std::array<Vec3, 3> v;
  std::uint8_t label = 0;
};

/// Room shell, window panels and transformed object meshes in world space.
std::vector<LabeledTriangle> scene_triangles(const Scene& scene);

struct Rendering {
  DepthMap depth;
  /// Category of the nearest surface per pixel; 0 where nothing was hit.
  std::vector<std::uint8_t> labels;
};

/// Z-buffer rasterization at pixel centers. Depth is camera-space z in
/// meters, interpolated as 1/z so planar surfaces are exact; pixels that hit
/// nothing are 0.
Rendering rasterize(const std::vector<LabeledTriangle>& triangles,
                    const PinholeCamera& cam);

Rendering render_scene(const Scene& scene, const PinholeCamera& cam);
DepthMap render_depth(const Scene& scene, const PinholeCamera& cam);

}  // namespace voxsem::forge
