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

#include "voxsem/volume/camera.hpp"

#include <cmath>
#include <string>

#include "voxsem/common/error.hpp"

namespace voxsem {

void PinholeCamera::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0)) {
    throw ValidationError("camera focal lengths must be positive");
  }
  if (width < 1 || height < 1) {
    throw ValidationError("camera image size must be positive");
  }
  if (!pose.rotation.is_rotation(1e-6)) {
    throw ValidationError("camera rotation is not orthonormal with det +1");
  }
  if (!pose.translation.finite()) {
    throw ValidationError("camera position must be finite");
  }
}

PinholeCamera kinect_camera() { return PinholeCamera{}; }

PinholeCamera scaled_intrinsics(const PinholeCamera& cam, int width,
                                int height) {
  PinholeCamera out = cam;
  const double sx = static_cast<double>(width) / cam.width;
  const double sy = static_cast<double>(height) / cam.height;
  out.fx = cam.fx * sx;
  out.fy = cam.fy * sy;
  out.cx = (cam.cx + 0.5) * sx - 0.5;
  out.cy = (cam.cy + 0.5) * sy - 0.5;
  out.width = width;
  out.height = height;
  return out;
}

RigidTransform look_pose(const Vec3& position, double yaw, double tilt) {
  const Vec3 forward{std::sin(yaw) * std::cos(tilt), std::sin(tilt),
                     std::cos(yaw) * std::cos(tilt)};
  const Vec3 right{-std::cos(yaw), 0.0, std::sin(yaw)};
  const Vec3 down = cross(forward, right);
  return {Mat3::from_columns(right, down, forward), position};
}

std::optional<PixelHit> project(const PinholeCamera& cam, const Vec3& world) {
  const Vec3 c = cam.world_to_camera(world);
  if (c.z <= 0.0) return std::nullopt;
  const double u = cam.fx * c.x / c.z + cam.cx;
  const double v = cam.fy * c.y / c.z + cam.cy;
  const double ur = std::floor(u + 0.5);
  const double vr = std::floor(v + 0.5);
  if (ur < 0.0 || vr < 0.0 || ur >= cam.width || vr >= cam.height) {
    return std::nullopt;
  }
  return PixelHit{static_cast<int>(ur), static_cast<int>(vr), c.z};
}

void DepthMap::validate() const {
  if (width < 0 || height < 0 ||
      values.size() != static_cast<std::size_t>(width) *
                           static_cast<std::size_t>(height)) {
    throw ValidationError("depth map size does not match " +
                          std::to_string(width) + "x" + std::to_string(height));
  }
  for (float v : values) {
    if (!std::isfinite(v) || v < 0.0f) {
      throw ValidationError("depth map holds a negative or non-finite value");
    }
  }
}

std::size_t DepthMap::valid_count() const {
  std::size_t n = 0;
  for (float v : values) n += v > 0.0f ? 1 : 0;
  return n;
}

std::vector<Vec3> backproject_all(const DepthMap& depth,
                                  const PinholeCamera& cam) {
  std::vector<Vec3> pts;
  pts.reserve(depth.valid_count());
  for (int v = 0; v < depth.height; ++v) {
    for (int u = 0; u < depth.width; ++u) {
      const float d = depth.at(u, v);
      if (d > 0.0f) pts.push_back(cam.backproject(u, v, d));
    }
  }
  return pts;
}

}  // namespace voxsem
