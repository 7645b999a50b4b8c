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

#include "voxsem/forge/cameras.hpp"

#include <algorithm>
#include <array>
#include <numbers>

#include "voxsem/common/error.hpp"
#include "voxsem/common/rng.hpp"

namespace voxsem::forge {

namespace {

bool is_object_label(std::uint8_t l) {
  return !is_structural(l);
}

double clamped_gaussian(Rng& rng, double mean, double stddev, double sigmas) {
  const double g = rng.gaussian(mean, stddev);
  return std::clamp(g, mean - sigmas * stddev, mean + sigmas * stddev);
}

}  // namespace

ValidityReport view_valid(const DepthMap& depth,
                          const std::vector<std::uint8_t>& pixel_labels) {
  depth.validate();
  if (pixel_labels.size() != depth.values.size()) {
    throw ValidationError("label image has " + std::to_string(pixel_labels.size()) +
                          " pixels, depth map has " +
                          std::to_string(depth.values.size()));
  }
  const double n = static_cast<double>(depth.values.size());
  std::size_t in_range = 0;
  std::size_t object_pixels = 0;
  std::array<bool, kNumClasses> seen{};
  for (std::size_t i = 0; i < depth.values.size(); ++i) {
    const float d = depth.values[i];
    if (d >= kValidDepthNear && d <= kValidDepthFar) ++in_range;
    const std::uint8_t l = pixel_labels[i];
    if (l >= kNumClasses) throw ValidationError("pixel label out of range");
    if (is_object_label(l)) {
      ++object_pixels;
      seen[l] = true;
    }
  }
  ValidityReport r;
  r.depth_fraction = n > 0 ? in_range / n : 0.0;
  r.object_categories = static_cast<int>(std::count(seen.begin(), seen.end(), true));
  r.object_fraction = n > 0 ? object_pixels / n : 0.0;
  r.depth_ok = r.depth_fraction > kMinDepthFraction;
  r.categories_ok = r.object_categories > kMinObjectCategoriesExclusive;
  r.coverage_ok = r.object_fraction > kMinObjectFraction;
  return r;
}

std::vector<Vec3> free_floor_positions(const Scene& scene,
                                       const CameraSamplerParams& params) {
  std::vector<Aabb> footprints;
  for (const auto& o : scene.objects) {
    Aabb b = object_bounds(o);
    const Vec3 m{params.footprint_margin, 0.0, params.footprint_margin};
    footprints.push_back({b.min - m, b.max + m});
  }
  const Aabb& room = scene.room.box;
  const double half = 0.5 * params.grid_spacing;
  std::vector<Vec3> out;
  for (double z = room.min.z + half; z <= room.max.z - half + 1e-9;
       z += params.grid_spacing) {
    for (double x = room.min.x + half; x <= room.max.x - half + 1e-9;
         x += params.grid_spacing) {
      const bool blocked = std::any_of(
          footprints.begin(), footprints.end(), [&](const Aabb& f) {
            return x >= f.min.x && x <= f.max.x && z >= f.min.z && z <= f.max.z;
          });
      if (!blocked) out.push_back({x, room.min.y, z});
    }
  }
  return out;
}

CameraSampling sample_cameras_detailed(const Scene& scene, std::uint64_t seed,
                                       int max_per_room,
                                       const CameraSamplerParams& params) {
  if (max_per_room < 0) throw ValidationError("max_per_room must be >= 0");
  CameraSampling out;
  std::vector<Vec3> cells = free_floor_positions(scene, params);
  Rng rng(seed);
  for (std::size_t i = cells.size(); i > 1; --i) {
    std::swap(cells[i - 1], cells[rng.below(i)]);
  }
  const auto tris = scene_triangles(scene);
  constexpr double deg = std::numbers::pi / 180.0;
  for (const Vec3& cell : cells) {
    if (static_cast<int>(out.cameras.size()) >= max_per_room) break;
    for (int a = 0; a < params.attempts_per_location; ++a) {
      CameraDraw d;
      const double h = clamped_gaussian(rng, params.height_mean,
                                        params.height_stddev, params.clamp_sigmas);
      d.tilt = clamped_gaussian(rng, params.tilt_mean_degrees,
                                params.tilt_stddev_degrees, params.clamp_sigmas) *
               deg;
      d.yaw = rng.uniform(0.0, 2.0 * std::numbers::pi);
      d.position = {cell.x, cell.y + h, cell.z};
      PinholeCamera cam = params.intrinsics;
      cam.pose = look_pose(d.position, d.yaw, d.tilt);
      const Rendering r = rasterize(tris, cam);
      d.report = view_valid(r.depth, r.labels);
      out.draws.push_back(d);
      if (d.report.valid()) {
        out.cameras.push_back(cam);
        break;
      }
    }
  }
  return out;
}

std::vector<PinholeCamera> sample_cameras(const Scene& scene, std::uint64_t seed,
                                          int max_per_room,
                                          const CameraSamplerParams& params) {
  return sample_cameras_detailed(scene, seed, max_per_room, params).cameras;
}

}  // namespace voxsem::forge
