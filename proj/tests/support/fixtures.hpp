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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "voxsem/common/rng.hpp"
#include "voxsem/forge/render.hpp"
#include "voxsem/neural/tensor.hpp"
#include "voxsem/volume/camera.hpp"
#include "voxsem/volume/grid.hpp"
#include "voxsem/volume/visibility.hpp"

namespace voxsem::testing {

// Identity pose: camera axes coincide with world axes, looking down +z.
inline PinholeCamera small_camera(int width = 128, int height = 96, double f = 53.0) {
  PinholeCamera cam;
  cam.width = width;
  cam.height = height;
  cam.fx = cam.fy = f;
  cam.cx = (width - 1) * 0.5;
  cam.cy = (height - 1) * 0.5;
  return cam;
}

// 32^3 cube of 5 cm voxels in front of small_camera(), fully inside its frustum.
inline GridSpec small_grid() {
  GridSpec g;
  g.origin = {-0.8, -0.8, 1.0};
  g.voxel_size = 0.05;
  g.dims = {32, 32, 32};
  return g;
}

inline Aabb huge_room() { return {{-50, -50, -50}, {50, 50, 50}}; }

inline void push_quad(std::vector<forge::LabeledTriangle>& tris, const Vec3& a, const Vec3& b,
                      const Vec3& c, const Vec3& d, std::uint8_t label) {
  tris.push_back({{a, b, c}, label});
  tris.push_back({{a, c, d}, label});
}

inline void push_box(std::vector<forge::LabeledTriangle>& tris, const Vec3& lo, const Vec3& hi,
                     std::uint8_t label) {
  const Vec3 p[8] = {{lo.x, lo.y, lo.z}, {hi.x, lo.y, lo.z}, {hi.x, hi.y, lo.z},
                     {lo.x, hi.y, lo.z}, {lo.x, lo.y, hi.z}, {hi.x, lo.y, hi.z},
                     {hi.x, hi.y, hi.z}, {lo.x, hi.y, hi.z}};
  push_quad(tris, p[0], p[1], p[2], p[3], label);
  push_quad(tris, p[4], p[5], p[6], p[7], label);
  push_quad(tris, p[0], p[1], p[5], p[4], label);
  push_quad(tris, p[3], p[2], p[6], p[7], label);
  push_quad(tris, p[0], p[3], p[7], p[4], label);
  push_quad(tris, p[1], p[2], p[6], p[5], label);
}

// Large plane through `center` with unit normal n, spanning the whole frustum.
inline void push_plane(std::vector<forge::LabeledTriangle>& tris, const Vec3& center,
                       const Vec3& n, double half, std::uint8_t label) {
  const Vec3 helper = std::abs(n.y) < 0.9 ? Vec3{0, 1, 0} : Vec3{1, 0, 0};
  const Vec3 u = normalized(cross(n, helper));
  const Vec3 v = cross(n, u);
  push_quad(tris, center - u * half - v * half, center + u * half - v * half,
            center + u * half + v * half, center - u * half + v * half, label);
}

// Fronto-parallel wall at camera depth z filling the small_camera() frame.
struct WallAt {
  PinholeCamera cam = small_camera();
  GridSpec grid = small_grid();
  DepthMap depth;
  explicit WallAt(double z) {
    std::vector<forge::LabeledTriangle> tris;
    push_plane(tris, {0, 0, z}, {0, 0, -1}, 20.0, 3);
    depth = forge::rasterize(tris, cam).depth;
  }
};

// Random tilted back wall plus up to three floating boxes inside small_grid().
inline std::vector<forge::LabeledTriangle> random_tsdf_scene(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<forge::LabeledTriangle> tris;
  const double tx = rng.uniform(-0.6, 0.6);
  const double ty = rng.uniform(-0.6, 0.6);
  const Vec3 n = normalized({std::tan(tx), std::tan(ty), -1.0});
  push_plane(tris, {rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2), rng.uniform(2.0, 2.3)}, n,
             20.0, 3);
  const int boxes = rng.uniform_int(0, 3);
  for (int b = 0; b < boxes; ++b) {
    const Vec3 c{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(1.4, 1.8)};
    const Vec3 h{rng.uniform(0.08, 0.25), rng.uniform(0.08, 0.25), rng.uniform(0.08, 0.2)};
    push_box(tris, c - h, c + h, static_cast<std::uint8_t>(5 + b));
  }
  return tris;
}

// Untruncated nearest distance from every voxel center to every back-projected sample.
inline std::vector<double> brute_force_distances(const DepthMap& depth, const PinholeCamera& cam,
                                                 const GridSpec& spec) {
  const auto points = backproject_all(depth, cam);
  std::vector<double> px(points.size()), py(points.size()), pz(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    px[p] = points[p].x;
    py[p] = points[p].y;
    pz[p] = points[p].z;
  }
  std::vector<double> out(static_cast<std::size_t>(spec.count()));
  for (int k = 0; k < spec.dims.nz; ++k) {
    for (int j = 0; j < spec.dims.ny; ++j) {
      for (int i = 0; i < spec.dims.nx; ++i) {
        const Vec3 c = voxel_center(spec, i, j, k);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < px.size(); ++p) {
          const double dx = px[p] - c.x;
          const double dy = py[p] - c.y;
          const double dz = pz[p] - c.z;
          best = std::min(best, dx * dx + dy * dy + dz * dz);
        }
        out[static_cast<std::size_t>(spec.linear(i, j, k))] = std::sqrt(best);
      }
    }
  }
  return out;
}

template <typename T>
nn::Tensor<T> random_tensor(const nn::Shape& s, Rng& rng, double lo = -1.0, double hi = 1.0) {
  nn::Tensor<T> t(s);
  for (auto& v : t.data) v = static_cast<T>(rng.uniform(lo, hi));
  return t;
}

template <typename T>
nn::Tensor<T> random_integer_tensor(const nn::Shape& s, Rng& rng, int lo, int hi) {
  nn::Tensor<T> t(s);
  for (auto& v : t.data) v = static_cast<T>(rng.uniform_int(lo, hi));
  return t;
}

template <typename T>
double dot(const nn::Tensor<T>& a, const nn::Tensor<T>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    s += static_cast<double>(a.data[i]) * static_cast<double>(b.data[i]);
  }
  return s;
}

// ||a - b|| / max(||a||, ||b||); 0 when both vanish.
inline double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const double scale = std::sqrt(std::max(na, nb));
  return scale == 0.0 ? std::sqrt(diff) : std::sqrt(diff) / scale;
}

// Central differences of a scalar function with respect to every entry of x.
template <typename F>
std::vector<double> numeric_gradient(nn::Tensor<double>& x, F&& f, double eps = 1e-3) {
  std::vector<double> g(x.data.size());
  for (std::size_t i = 0; i < x.data.size(); ++i) {
    const double keep = x.data[i];
    x.data[i] = keep + eps;
    const double fp = f();
    x.data[i] = keep - eps;
    const double fm = f();
    x.data[i] = keep;
    g[i] = (fp - fm) / (2.0 * eps);
  }
  return g;
}

inline std::vector<double> as_vector(const nn::Tensor<double>& t) { return t.data; }

// Unique scratch directory under the system temp dir; removed on destruction.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("voxsem_" + tag + "_" + std::to_string(std::random_device{}()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

}  // namespace voxsem::testing
