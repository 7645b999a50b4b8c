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


#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <vector>

#include "support/fixtures.hpp"
#include "voxsem/common/error.hpp"
#include "voxsem/forge/render.hpp"
#include "voxsem/volume/camera.hpp"
#include "voxsem/volume/grid.hpp"
#include "voxsem/volume/visibility.hpp"
#include "voxsem/volume/voxb.hpp"

namespace voxsem {
namespace {

using testing::push_plane;
using testing::small_camera;
using testing::small_grid;

GridSpec unit_grid(const Vec3& origin, double vs, GridDims dims) {
  GridSpec g;
  g.origin = origin;
  g.voxel_size = vs;
  g.dims = dims;
  return g;
}

TEST(WorldToGrid, FloorArithmetic) {
  const auto g = unit_grid({0, 0, 0}, 0.02, {240, 144, 240});
  EXPECT_EQ(world_to_grid({0.03, 0, 0}, g), (Index3{1, 0, 0}));
  EXPECT_EQ(world_to_grid(g.origin, g), (Index3{0, 0, 0}));
  EXPECT_EQ(world_to_grid({-0.001, 0, 0}, g).i, -1);
}

TEST(WorldToGrid, LastIndexOfFullWidthGrid) {
  const auto g = unit_grid({-2.4, 0, 0}, 0.02, {240, 144, 240});
  EXPECT_EQ(world_to_grid({2.39, 0.0, 0.0}, g).i, 239);
}

TEST(GridToWorld, VoxelCenters) {
  const auto g = unit_grid({0, 0, 0}, 0.02, {240, 144, 240});
  const Vec3 c = grid_to_world(0, 0, 0, g);
  EXPECT_DOUBLE_EQ(c.x, 0.01);
  EXPECT_DOUBLE_EQ(c.y, 0.01);
  EXPECT_DOUBLE_EQ(c.z, 0.01);

  const Vec3 origin{-2.4, 0.3, 1.0};
  const auto full = full_scale_grid(origin);
  const Vec3 far = grid_to_world(239, 143, 239, full);
  EXPECT_NEAR(far.x - origin.x, 4.79, 1e-12);
  EXPECT_NEAR(far.y - origin.y, 2.87, 1e-12);
  EXPECT_NEAR(far.z - origin.z, 4.79, 1e-12);
}

TEST(GridToWorld, RejectsOutOfRange) {
  const auto g = unit_grid({0, 0, 0}, 0.1, {4, 4, 4});
  EXPECT_THROW(grid_to_world(4, 0, 0, g), ValidationError);
  EXPECT_THROW(grid_to_world(0, -1, 0, g), ValidationError);
}

TEST(GridToWorld, RoundTripEveryIndex) {
  const auto g = unit_grid({-1.37, 0.21, 3.3}, 0.075, {64, 32, 64});
  for (std::int64_t idx = 0; idx < g.count(); ++idx) {
    const Index3 v = g.unlinear(idx);
    ASSERT_EQ(world_to_grid(grid_to_world(v, g), g), v);
  }
}

TEST(GridSpec, Validation) {
  EXPECT_THROW(unit_grid({}, 0.0, {1, 1, 1}).validate(), ValidationError);
  EXPECT_THROW(unit_grid({}, 0.1, {0, 1, 1}).validate(), ValidationError);
  const auto full = full_scale_grid();
  EXPECT_EQ(full.dims, (GridDims{240, 144, 240}));
  EXPECT_DOUBLE_EQ(full.voxel_size, 0.02);
  EXPECT_EQ(VoxelGrid<float>(full).data.size(), 240u * 144u * 240u);
}

TEST(Camera, LookPoseIsProperRotation) {
  for (double yaw : {0.0, 0.7, 2.0, 4.5}) {
    for (double tilt : {-0.5, -0.17, 0.0, 0.2}) {
      const auto pose = look_pose({1, 1.5, 2}, yaw, tilt);
      EXPECT_TRUE(pose.rotation.is_rotation());
      EXPECT_NEAR(pose.rotation.determinant(), 1.0, 1e-12);
    }
  }
}

TEST(Camera, ProjectBackprojectRoundTrip) {
  PinholeCamera cam = kinect_camera();
  cam.pose = look_pose({0.5, 1.4, -0.3}, 0.9, -0.2);
  for (int v = 0; v < cam.height; v += 37) {
    for (int u = 0; u < cam.width; u += 41) {
      const auto hit = project(cam, cam.backproject(u, v, 2.5));
      ASSERT_TRUE(hit.has_value());
      EXPECT_EQ(hit->u, u);
      EXPECT_EQ(hit->v, v);
      EXPECT_NEAR(hit->z, 2.5, 1e-9);
    }
  }
  EXPECT_FALSE(project(cam, cam.camera_to_world({0, 0, -1})).has_value());
}

TEST(Camera, ValidationRejectsBadIntrinsicsAndRotation) {
  PinholeCamera cam = kinect_camera();
  cam.fx = 0;
  EXPECT_THROW(cam.validate(), ValidationError);
  cam = kinect_camera();
  cam.pose.rotation.m[0] = 2.0;
  EXPECT_THROW(cam.validate(), ValidationError);
}

TEST(DepthMap, ValidationRejectsNegativeAndNonFinite) {
  DepthMap d(4, 3, 1.0f);
  EXPECT_NO_THROW(d.validate());
  d.at(1, 1) = -0.5f;
  EXPECT_THROW(d.validate(), ValidationError);
  d.at(1, 1) = std::nanf("");
  EXPECT_THROW(d.validate(), ValidationError);
}

struct WallView {
  PinholeCamera cam = small_camera();
  GridSpec grid = small_grid();
  DepthMap depth;
  double wall_z = 1.83;
  WallView() {
    std::vector<forge::LabeledTriangle> tris;
    push_plane(tris, {0, 0, wall_z}, {0, 0, -1}, 20.0, 3);
    depth = forge::rasterize(tris, cam).depth;
  }
};

TEST(ClassifyVoxels, FreeAndOccludedAroundWall) {
  WallView w;
  PinholeCamera cam = w.cam;
  GridSpec g = w.grid;
  g.origin = {-0.8, -0.8, 0.5};
  g.dims = {32, 32, 60};
  const auto states = classify_voxels(w.depth, cam, g, testing::huge_room());
  // Column through the optical axis: centers at z = 0.525 + 0.05 k.
  const auto at_depth = [&](double z) {
    const Index3 v = world_to_grid({0.01, 0.01, z}, g);
    return states.at(v.i, v.j, v.k);
  };
  EXPECT_EQ(at_depth(w.wall_z - 1.0), VoxelState::ObservedFree);
  EXPECT_EQ(at_depth(w.wall_z + 1.0), VoxelState::Occluded);
  EXPECT_EQ(at_depth(w.wall_z), VoxelState::Surface);
}

// Marches the ray through the voxel center out to 4x its length; the first
// wall crossing gives the observed depth along that ray.
VoxelState ray_march_oracle(const Vec3& center, double wall_z, double band) {
  const int steps = 40000;
  double hit_depth = -1.0;
  for (int s = 1; s <= steps; ++s) {
    const Vec3 p = center * (4.0 * s / steps);
    if (p.z >= wall_z) {
      hit_depth = p.z;
      break;
    }
  }
  if (hit_depth < 0.0) return VoxelState::OutsideFov;
  // The crossing overshoots by at most one step.
  const double observed = wall_z;
  EXPECT_LE(hit_depth - observed, 4.0 * center.z / steps + 1e-12);
  if (center.z < observed - band) return VoxelState::ObservedFree;
  if (center.z <= observed + band) return VoxelState::Surface;
  return VoxelState::Occluded;
}

TEST(ClassifyVoxels, FlatWallMatchesRayMarchOracle) {
  WallView w;
  const auto states = classify_voxels(w.depth, w.cam, w.grid, testing::huge_room());
  std::int64_t occluded = 0, oracle_occluded = 0;
  for (std::int64_t idx = 0; idx < w.grid.count(); ++idx) {
    const Index3 v = w.grid.unlinear(idx);
    const auto expect = ray_march_oracle(grid_to_world(v, w.grid), w.wall_z, w.grid.voxel_size);
    ASSERT_EQ(states[idx], expect) << "voxel " << v.i << "," << v.j << "," << v.k;
    occluded += states[idx] == VoxelState::Occluded;
    oracle_occluded += expect == VoxelState::Occluded;
  }
  EXPECT_EQ(occluded, oracle_occluded);
  EXPECT_GT(occluded, 0);
}

TEST(ClassifyVoxels, RoomFovAndInvalidDepth) {
  WallView w;
  DepthMap depth = w.depth;
  for (int v = 0; v < depth.height; ++v) {
    for (int u = 0; u < depth.width / 2; ++u) depth.at(u, v) = 0.0f;
  }
  GridSpec g = w.grid;
  g.origin = {-3.0, -0.8, 1.0};
  g.dims = {120, 32, 8};
  const Aabb room{{-2.5, -10, -10}, {10, 10, 10}};
  const auto states = classify_voxels(depth, w.cam, g, room);
  for (std::int64_t idx = 0; idx < g.count(); ++idx) {
    const Vec3 c = grid_to_world(g.unlinear(idx), g);
    const auto hit = project(w.cam, c);
    const auto s = states[idx];
    if (!room.contains(c)) {
      ASSERT_EQ(s, VoxelState::OutsideRoom);
    } else if (!hit || depth.at(hit->u, hit->v) == 0.0f) {
      ASSERT_EQ(s, VoxelState::OutsideFov);
    } else {
      ASSERT_EQ(s, VoxelState::ObservedFree);
    }
  }
}

TEST(ClassifyVoxels, PartitionAndMonotoneAlongRays) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto tris = testing::random_tsdf_scene(seed);
    const auto cam = small_camera();
    const auto g = small_grid();
    const auto depth = forge::rasterize(tris, cam).depth;
    const auto states = classify_voxels(depth, cam, g, testing::huge_room());
    ASSERT_TRUE(states.consistent());
    std::map<std::pair<int, int>, std::vector<std::pair<double, VoxelState>>> rays;
    for (std::int64_t idx = 0; idx < g.count(); ++idx) {
      const auto s = static_cast<int>(states[idx]);
      ASSERT_GE(s, 0);
      ASSERT_LT(s, kVoxelStateCount);
      const auto hit = project(cam, grid_to_world(g.unlinear(idx), g));
      if (hit && depth.at(hit->u, hit->v) > 0.0f) {
        rays[{hit->u, hit->v}].push_back({hit->z, states[idx]});
      }
    }
    for (auto& [pixel, samples] : rays) {
      std::sort(samples.begin(), samples.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t n = 1; n < samples.size(); ++n) {
        ASSERT_LE(static_cast<int>(samples[n - 1].second), static_cast<int>(samples[n].second))
            << "pixel " << pixel.first << "," << pixel.second;
      }
    }
  }
}

TEST(ClassifyVoxels, RejectsMismatchedDepth) {
  WallView w;
  DepthMap wrong(10, 10, 1.0f);
  EXPECT_THROW(classify_voxels(wrong, w.cam, w.grid, testing::huge_room()), ValidationError);
}

TEST(Voxb, RoundTripEveryPayload) {
  const auto g = quantize_to_f32(unit_grid({-1.25, 0.5, 2.0}, 0.075, {5, 3, 4}));
  VoxelGrid<float> scalars(g);
  VoxelGrid<std::uint8_t> labels(g);
  VoxelGrid<VoxelState> states(g);
  for (std::int64_t i = 0; i < g.count(); ++i) {
    scalars[i] = static_cast<float>(i) * 0.37f - 5.0f;
    labels[i] = static_cast<std::uint8_t>(i % 12);
    states[i] = static_cast<VoxelState>(i % kVoxelStateCount);
  }
  const auto fs = decode_voxb(encode_voxb(scalars), "s");
  EXPECT_EQ(fs.version, 1u);
  EXPECT_EQ(fs.spec, g);
  EXPECT_EQ(scalar_grid(fs, "s").data, scalars.data);
  EXPECT_EQ(label_grid(decode_voxb(encode_voxb(labels), "l"), "l").data, labels.data);
  EXPECT_EQ(state_grid(decode_voxb(encode_voxb(states), "t"), "t").data, states.data);

  const auto bytes = encode_voxb(scalars, VoxbTsdfHeader{2, 0.24f});
  const auto f2 = decode_voxb(bytes, "v2");
  EXPECT_EQ(f2.version, 2u);
  EXPECT_EQ(f2.mode, std::optional<std::uint8_t>(2));
  EXPECT_EQ(f2.d_max, std::optional<float>(0.24f));
  EXPECT_EQ(encode_voxb(scalar_grid(f2, "v2"), VoxbTsdfHeader{2, 0.24f}), bytes);
}

TEST(Voxb, FailsClosedOnCorruption) {
  const auto g = unit_grid({}, 0.5, {2, 2, 2});
  auto bytes = encode_voxb(VoxelGrid<std::uint8_t>(g, 1));
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_voxb(bad_magic, "m"), ValidationError);
  auto bad_version = bytes;
  bad_version[4] = 9;
  EXPECT_THROW(decode_voxb(bad_version, "v"), ValidationError);
  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_THROW(decode_voxb(truncated, "t"), ValidationError);
  auto bad_tag = bytes;
  bad_tag[36] = 7;
  EXPECT_THROW(decode_voxb(bad_tag, "p"), ValidationError);
  const auto f = decode_voxb(bytes, "ok");
  EXPECT_THROW(scalar_grid(f, "ok"), ValidationError);
  EXPECT_THROW(state_grid(f, "ok"), ValidationError);
  EXPECT_THROW(read_voxb("/nonexistent/file.voxb"), IoError);
}

}  // namespace
}  // namespace voxsem
