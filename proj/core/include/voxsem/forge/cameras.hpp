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

#include <cstdint>
#include <vector>

#include "voxsem/forge/render.hpp"
#include "voxsem/forge/scene.hpp"
#include "voxsem/volume/camera.hpp"

namespace voxsem::forge {

struct ValidityReport {
  /// Fraction of pixels with depth in [1 m, 8 m].
  double depth_fraction = 0.0;
  /// Distinct categories other than empty, wall, floor and ceiling.
  int object_categories = 0;
  /// Fraction of pixels showing a category other than empty and structure.
  double object_fraction = 0.0;

  bool depth_ok = false;
  bool categories_ok = false;
  bool coverage_ok = false;

  bool valid() const { return depth_ok && categories_ok && coverage_ok; }
};

inline constexpr double kMinDepthFraction = 0.70;
inline constexpr int kMinObjectCategoriesExclusive = 2;
inline constexpr double kMinObjectFraction = 0.30;
inline constexpr double kValidDepthNear = 1.0;
inline constexpr double kValidDepthFar = 8.0;

/// Throws ValidationError when the label image does not match the depth map.
ValidityReport view_valid(const DepthMap& depth,
                          const std::vector<std::uint8_t>& pixel_labels);

struct CameraSamplerParams {
  double height_mean = 1.5;
  double height_stddev = 0.1;
  double tilt_mean_degrees = -10.0;
  double tilt_stddev_degrees = 5.0;
  /// Gaussian draws are clamped to mean +- clamp_sigmas * stddev.
  double clamp_sigmas = 3.0;
  double grid_spacing = 1.0;
  /// Floor cells closer than this to an object footprint count as occupied.
  double footprint_margin = 0.2;
  int attempts_per_location = 4;
  PinholeCamera intrinsics = kinect_camera();
};

struct CameraDraw {
  Vec3 position;
  double yaw = 0.0;
  double tilt = 0.0;
  ValidityReport report;
};

struct CameraSampling {
  /// Every drawn candidate in draw order, accepted or not.
  std::vector<CameraDraw> draws;
  std::vector<PinholeCamera> cameras;
};

/// Floor positions on the sampling lattice that lie outside every dilated
/// object footprint.
std::vector<Vec3> free_floor_positions(const Scene& scene,
                                       const CameraSamplerParams& params);

/// Deterministic for a fixed (scene, seed, params).
CameraSampling sample_cameras_detailed(const Scene& scene, std::uint64_t seed,
                                       int max_per_room,
                                       const CameraSamplerParams& params = {});

std::vector<PinholeCamera> sample_cameras(const Scene& scene, std::uint64_t seed,
                                          int max_per_room,
                                          const CameraSamplerParams& params = {});

}  // namespace voxsem::forge
