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

#include <optional>
#include <vector>

#include "voxsem/volume/geometry.hpp"

namespace voxsem {

/// Pinhole intrinsics plus a camera-to-world pose. Camera space follows the
/// image convention: +x right, +y down, +z forward. The world is right-handed
/// with +y up. Pixel (u, v) has its center at integer coordinates.
struct PinholeCamera {
  double fx = 518.85;
  double fy = 518.85;
  double cx = 319.5;
  double cy = 239.5;
  int width = 640;
  int height = 480;
  RigidTransform pose;

  /// Throws ValidationError on non-positive focal lengths, empty images or a
  /// pose rotation that is not proper orthonormal.
  void validate() const;

  Vec3 position() const { return pose.translation; }
  Vec3 world_to_camera(const Vec3& p) const {
    return pose.rotation.transposed() * (p - pose.translation);
  }
  Vec3 camera_to_world(const Vec3& c) const { return pose.apply(c); }

  /// Back-projects pixel (u, v) with camera-space depth z.
  Vec3 backproject(int u, int v, double z) const {
    return camera_to_world({(u - cx) * z / fx, (v - cy) * z / fy, z});
  }
};

/// Default depth-sensor intrinsics (640x480, f = 518.85, center 319.5/239.5).
PinholeCamera kinect_camera();

/// Same field of view at a reduced resolution: focal lengths and principal
/// point scale with width_out / width.
PinholeCamera scaled_intrinsics(const PinholeCamera& cam, int width,
                                int height);

/// Pose looking along yaw (radians about +y; yaw 0 looks along +z) with the
/// given tilt (radians, negative looks down) from `position`.
RigidTransform look_pose(const Vec3& position, double yaw, double tilt);

struct PixelHit {
  int u = 0;
  int v = 0;
  double z = 0.0;
};

/// Nearest-pixel projection of a world point. Empty when the point is behind
/// the camera or lands outside the image.
std::optional<PixelHit> project(const PinholeCamera& cam, const Vec3& world);

/// Per-pixel camera-space depth in meters; 0 marks an invalid pixel.
struct DepthMap {
  int width = 0;
  int height = 0;
  std::vector<float> values;

  DepthMap() = default;
  DepthMap(int w, int h, float fill = 0.0f)
      : width(w), height(h),
        values(static_cast<std::size_t>(w) * static_cast<std::size_t>(h),
               fill) {}

  float at(int u, int v) const {
    return values[static_cast<std::size_t>(v) * width + u];
  }
  float& at(int u, int v) {
    return values[static_cast<std::size_t>(v) * width + u];
  }
  /// Throws ValidationError on size mismatch, non-finite or negative values.
  void validate() const;
  std::size_t valid_count() const;
};

/// World-space points of every valid pixel, in row-major pixel order.
std::vector<Vec3> backproject_all(const DepthMap& depth,
                                  const PinholeCamera& cam);

}  // namespace voxsem
