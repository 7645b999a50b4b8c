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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "support/fixtures.hpp"
#include "voxsem/common/error.hpp"
#include "voxsem/forge/cameras.hpp"
#include "voxsem/forge/dataset.hpp"
#include "voxsem/forge/labels.hpp"
#include "voxsem/forge/mesh.hpp"
#include "voxsem/forge/render.hpp"
#include "voxsem/forge/scene.hpp"
#include "voxsem/forge/view.hpp"
#include "voxsem/forge/voxelize.hpp"

namespace voxsem::forge {
namespace {

GridSpec room_grid(const Scene& s, double vs) {
  GridSpec g;
  g.origin = s.room.box.min;
  g.voxel_size = vs;
  const Vec3 e = s.room.box.extent();
  g.dims = {static_cast<int>(std::ceil(e.x / vs)), static_cast<int>(std::ceil(e.y / vs)),
            static_cast<int>(std::ceil(e.z / vs))};
  return g;
}

Scene empty_room(const Vec3& size) {
  Scene s;
  s.room.box = {{0, 0, 0}, size};
  return s;
}

TEST(GenerateScene, DeterministicPerSeed) {
  const auto p = SceneParams::defaults();
  EXPECT_EQ(scene_to_json(generate_scene(p, 1)), scene_to_json(generate_scene(p, 1)));
  EXPECT_NE(scene_to_json(generate_scene(p, 1)), scene_to_json(generate_scene(p, 2)));
}

TEST(GenerateScene, ShellOnlyHasNoObjects) {
  const auto s = generate_scene(SceneParams::shell_only(), 4);
  EXPECT_TRUE(s.objects.empty());
  EXPECT_TRUE(s.room.windows.empty());
}

TEST(GenerateScene, DefaultScenesSatisfyInvariantsOver100Seeds) {
  const auto p = SceneParams::defaults();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Scene s;
    try {
      s = generate_scene(p, seed);
    } catch (const ValidationError&) {
      continue;  // placement exhaustion is a reported error, not an invariant breach
    }
    ASSERT_NO_THROW(s.validate()) << "seed " << seed;
    for (std::size_t a = 0; a < s.objects.size(); ++a) {
      const Aabb ba = object_bounds(s.objects[a]);
      ASSERT_NE(s.objects[a].category, Category::Empty);
      ASSERT_TRUE(s.room.box.contains(ba.min) && s.room.box.contains(ba.max));
      for (std::size_t b = a + 1; b < s.objects.size(); ++b) {
        ASSERT_FALSE(ba.overlaps(object_bounds(s.objects[b]))) << "seed " << seed;
      }
    }
    // Same description after a JSON round trip.
    ASSERT_EQ(scene_to_json(scene_from_json(scene_to_json(s), "rt")), scene_to_json(s));
  }
}

TEST(GenerateScene, PlacementFailureNamesTheCategory) {
  auto p = SceneParams::shell_only();
  p.width_min = p.width_max = 2.0;
  p.depth_min = p.depth_max = 2.0;
  p.counts[label_of(Category::Bed)] = {30, 30};
  p.max_attempts = 50;
  try {
    generate_scene(p, 3);
    FAIL() << "expected placement failure";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("bed"), std::string::npos) << e.what();
  }
}

TEST(SceneValidate, RejectsOverlapAndContainmentBreaches) {
  Scene s = empty_room({4, 2.7, 4});
  SceneObject a{"object", Category::Objects, {}};
  a.transform.translation = {1, 0, 1};
  s.objects = {a, a};
  EXPECT_THROW(s.validate(), ValidationError);
  s.objects = {a};
  s.objects[0].transform.translation = {3.95, 0, 1};
  EXPECT_THROW(s.validate(), ValidationError);
}

TEST(Voxelize, SolidBoxMatchesAnalyticVolume) {
  const auto full = voxelize_object(make_box({0, 0, 0}, {1, 1, 1}));
  EXPECT_EQ(full.occupied_count(), 128LL * 128 * 128);
  // Off-lattice faces: the solid is contained and the excess stays inside a
  // one-voxel dilation.
  const auto slab = voxelize_object(make_box({0, 0, 0}, {1.0, 0.6, 0.3}));
  const double inner = 128.0 * (0.6 * 128.0) * (0.3 * 128.0);
  const double outer = 128.0 * (0.6 * 128.0 + 2.0) * (0.3 * 128.0 + 2.0);
  EXPECT_GE(static_cast<double>(slab.occupied_count()), inner);
  EXPECT_LE(static_cast<double>(slab.occupied_count()), outer);
}

TEST(Voxelize, SphereMatchesAnalyticVolume) {
  const auto vox = voxelize_object(make_icosphere({0, 0, 0}, 1.0, 4));
  const double r = 64.0;
  const auto ball = [](double radius) { return 4.0 / 3.0 * std::numbers::pi * std::pow(radius, 3); };
  const double count = static_cast<double>(vox.occupied_count());
  EXPECT_GE(count, ball(r - 1.0));
  EXPECT_LE(count, ball(r + 1.0));
  // Overlap rasterization adds a mean shell of (|nx|+|ny|+|nz|)/2 = 0.75 voxel
  // over a sphere, i.e. about 3 * 0.75 / r of the volume.
  EXPECT_NEAR(count, ball(r), 0.035 * ball(r));
}

TEST(Voxelize, ThinPlaneCarvesBothSides) {
  const auto vox = voxelize_object(
      make_quad({0, 0, 0.5}, {1, 0, 0.5}, {1, 1, 0.5}, {0, 1, 0.5}));
  const int n = vox.resolution();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      int column = 0;
      for (int k = 0; k < n; ++k) column += vox.occupied(i, j, k);
      ASSERT_GE(column, 1);
      ASSERT_LE(column, 2);
    }
  }
}

TEST(Voxelize, LibraryMeshesFitTightly) {
  for (const auto& id : library_mesh_ids()) {
    const auto& mesh = library_mesh(id);
    const auto vox = voxelize_object(mesh);
    const Vec3 e = mesh.bounds().extent();
    const double ratio = std::max({e.x, e.y, e.z}) / vox.voxel_size();
    EXPECT_GE(ratio, 127.0 - 1e-9) << id;
    EXPECT_LE(ratio, 128.0 + 1e-9) << id;
  }
}

TEST(Voxelize, RejectsEmptyMesh) { EXPECT_THROW(voxelize_object(TriMesh{}), ValidationError); }

TEST(ComposeLabels, UnitCubeBedMatchesContainmentOracle) {
  Scene s = empty_room({4, 2.7, 4});
  SceneObject bed{"object", Category::Bed, {}};
  bed.transform.scale = {1.0 / 0.3, 1.0 / 0.3, 1.0 / 0.3};
  bed.transform.yaw_degrees = 30.0;
  bed.transform.translation = {2.03, 0.5, 1.96};
  s.objects = {bed};
  const auto lib = voxelize_scene_meshes(s);
  const GridSpec g = room_grid(s, 0.02);
  const auto labels = compose_scene_labels(s, lib, g);
  std::int64_t labeled = 0, mismatched = 0;
  for (std::int64_t idx = 0; idx < g.count(); ++idx) {
    const Index3 v = g.unlinear(idx);
    const Vec3 c = grid_to_world(v, g);
    const bool structure = c.y < 0.02 || c.y > 2.68 || c.x < 0.02 || c.x > 3.98 ||
                           c.z < 0.02 || c.z > 3.98;
    if (structure) continue;
    // Local unit cube spans x, z in [-0.5, 0.5] and y in [0, 1].
    const Vec3 q = bed.transform.apply_inverse(c);
    const Vec3 local{q.x / 0.3, q.y / 0.3, q.z / 0.3};
    const double inside_margin =
        std::min({0.5 - std::abs(local.x), 0.5 - std::abs(local.z), local.y, 1.0 - local.y});
    const bool oracle = inside_margin >= 0.0;
    const bool hit = labels[idx] == label_of(Category::Bed);
    labeled += hit;
    if (hit != oracle) {
      ++mismatched;
      ASSERT_LE(std::abs(inside_margin), g.voxel_size) << "voxel far from the cube boundary";
    }
    ASSERT_TRUE(labels[idx] == 0 || hit);
  }
  EXPECT_GT(labeled, 100000);
  EXPECT_LT(mismatched, labeled / 5);
}

TEST(ComposeLabels, EmptyRoomHasOnlyStructure) {
  const Scene s = generate_scene(SceneParams::shell_only(), 2);
  const auto labels = compose_scene_labels(s, {}, room_grid(s, 0.05));
  std::set<int> present(labels.data.begin(), labels.data.end());
  EXPECT_EQ(present, (std::set<int>{0, 1, 2, 3}));
}

TEST(ComposeLabels, DefaultSceneContainsEveryLabel) {
  const Scene s = generate_scene(SceneParams::defaults(), 5);
  const auto labels = compose_scene_labels(s, voxelize_scene_meshes(s), room_grid(s, 0.04));
  std::array<std::int64_t, kNumClasses> hist{};
  for (auto l : labels.data) ++hist[l];
  for (int c = 0; c < kNumClasses; ++c) EXPECT_GT(hist[c], 0) << kCategoryNames[c];
}

TEST(ComposeLabels, NeverLabelsOutsideObjectsAndStructure) {
  const Scene s = generate_scene(SceneParams::defaults(), 6);
  const GridSpec g = room_grid(s, 0.05);
  const auto labels = compose_scene_labels(s, voxelize_scene_meshes(s), g);
  const Aabb& r = s.room.box;
  for (std::int64_t idx = 0; idx < g.count(); ++idx) {
    if (labels[idx] == 0) continue;
    const Vec3 c = grid_to_world(g.unlinear(idx), g);
    const bool plane = c.x - r.min.x < g.voxel_size || r.max.x - c.x < g.voxel_size ||
                       c.y - r.min.y < g.voxel_size || r.max.y - c.y < g.voxel_size ||
                       c.z - r.min.z < g.voxel_size || r.max.z - c.z < g.voxel_size;
    const bool in_object = std::any_of(s.objects.begin(), s.objects.end(), [&](const auto& o) {
      const Aabb b = object_bounds(o);
      return b.contains(c);
    });
    ASSERT_TRUE(plane || in_object) << "voxel " << idx;
  }
}

TEST(ComposeLabels, MissingVoxelizationIsAnError) {
  const Scene s = generate_scene(SceneParams::defaults(), 7);
  EXPECT_THROW(compose_scene_labels(s, {}, room_grid(s, 0.1)), ValidationError);
}

TEST(Render, FrontoParallelWallIsConstantDepth) {
  const testing::WallAt wall(2.0);
  std::size_t valid = 0;
  for (float v : wall.depth.values) {
    if (v == 0.0f) continue;
    ++valid;
    ASSERT_NEAR(v, 2.0, 1e-5);
  }
  EXPECT_EQ(valid, wall.depth.values.size());
}

// Nearest positive hit of a ray against the six inward room planes.
std::pair<double, int> ray_room_hit(const Aabb& room, const Vec3& o, const Vec3& d) {
  double best = std::numeric_limits<double>::infinity();
  int plane = -1;
  for (int axis = 0; axis < 3; ++axis) {
    for (int side = 0; side < 2; ++side) {
      const double target = side ? room.max[axis] : room.min[axis];
      if (d[axis] == 0.0) continue;
      const double t = (target - o[axis]) / d[axis];
      if (t > 0.0 && t < best) {
        best = t;
        plane = axis * 2 + side;
      }
    }
  }
  return {best, plane};
}

TEST(Render, RoomCornerMatchesAnalyticRayCast) {
  const Scene s = empty_room({4, 2.7, 4});
  PinholeCamera cam = kinect_camera();
  cam.pose = look_pose({1.2, 1.4, 1.1}, std::numbers::pi / 4.0, -0.1);
  const auto r = render_scene(s, cam);
  const auto plane_at = [&](int u, int v) {
    const Vec3 dir = cam.backproject(u, v, 1.0) - cam.position();
    return ray_room_hit(s.room.box, cam.position(), dir);
  };
  int off = 0;
  for (int v = 0; v < cam.height; ++v) {
    for (int u = 0; u < cam.width; ++u) {
      const auto [t, plane] = plane_at(u, v);
      // Rays are parametrized with unit camera depth, so t is the depth.
      const double expect = t;
      if (std::abs(r.depth.at(u, v) - expect) <= 1e-4) continue;
      bool crease = false;
      for (int dv = -1; dv <= 1; ++dv) {
        for (int du = -1; du <= 1; ++du) {
          const int uu = std::clamp(u + du, 0, cam.width - 1);
          const int vv = std::clamp(v + dv, 0, cam.height - 1);
          crease |= plane_at(uu, vv).second != plane;
        }
      }
      ASSERT_TRUE(crease) << "pixel " << u << "," << v << " depth " << r.depth.at(u, v)
                          << " expected " << expect;
      ++off;
    }
  }
  EXPECT_LT(off, cam.width * 3);
  // The corner lies near the center; depth grows toward the image edges.
  EXPECT_GT(r.depth.at(319, 239), r.depth.at(5, 239));
  EXPECT_GT(r.depth.at(319, 239), r.depth.at(634, 239));
}

TEST(Render, NothingInFrustumGivesInvalidDepth) {
  const Scene s = empty_room({4, 2.7, 4});
  PinholeCamera cam = kinect_camera();
  cam.pose = look_pose({2, 1.4, -1.0}, std::numbers::pi, 0.0);
  const auto r = render_scene(s, cam);
  for (float v : r.depth.values) ASSERT_EQ(v, 0.0f);
  for (auto l : r.labels) ASSERT_EQ(l, 0);
}

DepthMap constant_depth(float z) { return DepthMap(64, 48, z); }

TEST(ViewValid, FloorOnlyFailsCategories) {
  const auto rep = view_valid(constant_depth(2.0f),
                              std::vector<std::uint8_t>(64 * 48, label_of(Category::Floor)));
  EXPECT_TRUE(rep.depth_ok);
  EXPECT_FALSE(rep.categories_ok);
  EXPECT_EQ(rep.object_categories, 0);
  EXPECT_FALSE(rep.valid());
}

TEST(ViewValid, NearWallFailsDepth) {
  std::vector<std::uint8_t> labels(64 * 48, label_of(Category::Wall));
  const auto rep = view_valid(constant_depth(0.5f), labels);
  EXPECT_FALSE(rep.depth_ok);
  EXPECT_DOUBLE_EQ(rep.depth_fraction, 0.0);
  EXPECT_FALSE(rep.valid());
}

TEST(ViewValid, ThreeObjectsOverFortyPercentIsValid) {
  std::vector<std::uint8_t> labels(64 * 48, label_of(Category::Wall));
  DepthMap depth = constant_depth(4.0f);
  const std::array<Category, 3> cats{Category::Bed, Category::Table, Category::Chair};
  const std::size_t covered = labels.size() * 4 / 10;
  for (std::size_t p = 0; p < covered; ++p) {
    labels[p] = label_of(cats[p % 3]);
    depth.values[p] = 1.5f + static_cast<float>(p % 5);
  }
  const auto rep = view_valid(depth, labels);
  EXPECT_DOUBLE_EQ(rep.depth_fraction, 1.0);
  EXPECT_EQ(rep.object_categories, 3);
  EXPECT_DOUBLE_EQ(rep.object_fraction, static_cast<double>(covered) / labels.size());
  EXPECT_GT(rep.object_fraction, 0.3);
  EXPECT_TRUE(rep.valid());
}

TEST(ViewValid, TwoCategoriesAreNotEnough) {
  std::vector<std::uint8_t> labels(64 * 48, label_of(Category::Bed));
  for (std::size_t p = 0; p < labels.size(); p += 2) labels[p] = label_of(Category::Sofa);
  EXPECT_FALSE(view_valid(constant_depth(3.0f), labels).categories_ok);
}

TEST(ViewValid, RejectsMismatchedSizes) {
  EXPECT_THROW(view_valid(constant_depth(2.0f), std::vector<std::uint8_t>(10, 0)),
               ValidationError);
}

TEST(SampleCameras, ReturnedCamerasRevalidate) {
  for (std::uint64_t seed = 10; seed < 13; ++seed) {
    const Scene s = generate_scene(SceneParams::defaults(), seed);
    const auto sampling = sample_cameras_detailed(s, seed, 5);
    ASSERT_LE(sampling.cameras.size(), 5u);
    for (const auto& cam : sampling.cameras) {
      const auto r = render_scene(s, cam);
      EXPECT_TRUE(view_valid(r.depth, r.labels).valid());
    }
    const CameraSamplerParams p;
    for (const auto& d : sampling.draws) {
      EXPECT_LE(std::abs(d.position.y - s.room.box.min.y - p.height_mean),
                p.clamp_sigmas * p.height_stddev + 1e-12);
      EXPECT_LE(std::abs(d.tilt * 180.0 / std::numbers::pi - p.tilt_mean_degrees),
                p.clamp_sigmas * p.tilt_stddev_degrees + 1e-9);
      EXPECT_GE(d.yaw, 0.0);
      EXPECT_LT(d.yaw, 2.0 * std::numbers::pi);
    }
  }
}

TEST(SampleCameras, PackedSceneYieldsNothing) {
  Scene s = empty_room({3, 2.7, 3});
  SceneObject block{"furniture", Category::Furniture, {}};
  block.transform.scale = {3.0, 1.0, 6.0};
  block.transform.translation = {1.5, 0.0, 1.5};
  s.objects = {block};
  EXPECT_TRUE(free_floor_positions(s, {}).empty());
  EXPECT_TRUE(sample_cameras(s, 1, 5).empty());
}

TEST(SampleCameras, DeterministicPerSeed) {
  const Scene s = generate_scene(SceneParams::defaults(), 21);
  const auto a = sample_cameras(s, 9, 5);
  const auto b = sample_cameras(s, 9, 5);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(camera_to_json(a[i]), camera_to_json(b[i]));
}

TEST(ViewFrame, CameraFacesPositiveZAfterRotation) {
  const Scene s = generate_scene(SceneParams::defaults(), 30);
  for (double yaw : {0.1, 1.7, 3.3, 4.9}) {
    PinholeCamera cam = kinect_camera();
    cam.pose = look_pose({2.0, 1.5, 2.0}, yaw, -0.17);
    const auto f = make_view_frame(s, cam, preset_grid(ScalePreset::Toy));
    const Vec3 forward = f.record.camera.pose.rotation.column(2);
    EXPECT_GE(forward.z, std::abs(forward.x) - 1e-12);
    EXPECT_NO_THROW(f.scene.validate());
    // The grid spans the floor and is centered laterally on the camera.
    EXPECT_FLOAT_EQ(static_cast<float>(f.record.grid.origin.y),
                    static_cast<float>(f.record.room.min.y));
    const auto back = view_from_json(view_to_json(f.record), "rt");
    EXPECT_EQ(view_to_json(back), view_to_json(f.record));
  }
}

TEST(FrustumStatistics, EmptyToOccupiedRatioAtFullScale) {
  const GridSpec shape = preset_grid(ScalePreset::Full);
  std::int64_t empty = 0, occupied = 0;
  int views = 0;
  for (std::uint64_t seed = 40; seed < 44; ++seed) {
    const Scene s = generate_scene(SceneParams::defaults(), seed);
    const auto lib = voxelize_scene_meshes(s);
    const auto cams = sample_cameras(s, seed, 2);
    for (const auto& cam : cams) {
      const auto v = render_view(s, cam, shape, lib);
      for (std::int64_t idx = 0; idx < v.labels.spec.count(); ++idx) {
        const auto st = v.states[idx];
        if (st == VoxelState::OutsideFov || st == VoxelState::OutsideRoom) continue;
        (v.labels[idx] == 0 ? empty : occupied) += 1;
      }
      ++views;
    }
  }
  ASSERT_GT(views, 4);
  const double ratio = static_cast<double>(empty) / static_cast<double>(occupied);
  std::printf("frustum empty:occupied over %d views = %.2f\n", views, ratio);
  EXPECT_GE(ratio, 5.0);
  EXPECT_LE(ratio, 15.0);
}

}  // namespace
}  // namespace voxsem::forge
