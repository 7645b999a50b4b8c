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

#include "voxsem/forge/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace voxsem::forge {

namespace {

constexpr double kNear = 1e-3;
// Window panels sit this far in front of their wall so they win the z-test.
constexpr double kWindowInset = 1e-3;

void add_quad(std::vector<LabeledTriangle>& out, const Vec3& a, const Vec3& b,
              const Vec3& c, const Vec3& d, std::uint8_t label) {
  out.push_back({{a, b, c}, label});
  out.push_back({{a, c, d}, label});
}

}  // namespace

std::vector<LabeledTriangle> scene_triangles(const Scene& scene) {
  std::vector<LabeledTriangle> tris;
  const Vec3 lo = scene.room.box.min;
  const Vec3 hi = scene.room.box.max;
  const auto wall = label_of(Category::Wall);
  add_quad(tris, {lo.x, lo.y, lo.z}, {hi.x, lo.y, lo.z}, {hi.x, lo.y, hi.z},
           {lo.x, lo.y, hi.z}, label_of(Category::Floor));
  add_quad(tris, {lo.x, hi.y, lo.z}, {lo.x, hi.y, hi.z}, {hi.x, hi.y, hi.z},
           {hi.x, hi.y, lo.z}, label_of(Category::Ceiling));
  add_quad(tris, {lo.x, lo.y, lo.z}, {lo.x, lo.y, hi.z}, {lo.x, hi.y, hi.z},
           {lo.x, hi.y, lo.z}, wall);
  add_quad(tris, {hi.x, lo.y, lo.z}, {hi.x, hi.y, lo.z}, {hi.x, hi.y, hi.z},
           {hi.x, lo.y, hi.z}, wall);
  add_quad(tris, {lo.x, lo.y, lo.z}, {lo.x, hi.y, lo.z}, {hi.x, hi.y, lo.z},
           {hi.x, lo.y, lo.z}, wall);
  add_quad(tris, {lo.x, lo.y, hi.z}, {hi.x, lo.y, hi.z}, {hi.x, hi.y, hi.z},
           {lo.x, hi.y, hi.z}, wall);

  const auto window = label_of(Category::Window);
  for (const auto& w : scene.room.windows) {
    if (w.extent().x == 0.0) {
      const double x = w.min.x == lo.x ? w.min.x + kWindowInset : w.min.x - kWindowInset;
      add_quad(tris, {x, w.min.y, w.min.z}, {x, w.min.y, w.max.z},
               {x, w.max.y, w.max.z}, {x, w.max.y, w.min.z}, window);
    } else {
      const double z = w.min.z == lo.z ? w.min.z + kWindowInset : w.min.z - kWindowInset;
      add_quad(tris, {w.min.x, w.min.y, z}, {w.max.x, w.min.y, z},
               {w.max.x, w.max.y, z}, {w.min.x, w.max.y, z}, window);
    }
  }

  for (const auto& obj : scene.objects) {
    const TriMesh m = transformed_mesh(obj);
    const auto label = label_of(obj.category);
    for (const auto& t : m.triangles) {
      tris.push_back({{m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]}, label});
    }
  }
  return tris;
}

Rendering rasterize(const std::vector<LabeledTriangle>& triangles,
                    const PinholeCamera& cam) {
  cam.validate();
  Rendering out{DepthMap(cam.width, cam.height, 0.0f),
                std::vector<std::uint8_t>(
                    static_cast<std::size_t>(cam.width) * cam.height, 0)};
  std::vector<double> zbuf(out.labels.size(), std::numeric_limits<double>::infinity());

  std::vector<Vec3> poly;
  std::vector<Vec3> clipped;
  for (const auto& tri : triangles) {
    poly.clear();
    for (const auto& v : tri.v) poly.push_back(cam.world_to_camera(v));
    // Clip against the near plane.
    clipped.clear();
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Vec3& a = poly[i];
      const Vec3& b = poly[(i + 1) % poly.size()];
      const bool ain = a.z >= kNear, bin = b.z >= kNear;
      if (ain) clipped.push_back(a);
      if (ain != bin) {
        const double t = (kNear - a.z) / (b.z - a.z);
        clipped.push_back(a + (b - a) * t);
      }
    }
    if (clipped.size() < 3) continue;

    // Screen-space vertices with 1/z.
    struct Sv {
      double u, v, inv_z;
    };
    std::vector<Sv> sv;
    sv.reserve(clipped.size());
    for (const auto& c : clipped) {
      sv.push_back({cam.fx * c.x / c.z + cam.cx, cam.fy * c.y / c.z + cam.cy, 1.0 / c.z});
    }
    for (std::size_t f = 1; f + 1 < sv.size(); ++f) {
      const Sv& p0 = sv[0];
      const Sv& p1 = sv[f];
      const Sv& p2 = sv[f + 1];
      const double area = (p1.u - p0.u) * (p2.v - p0.v) - (p1.v - p0.v) * (p2.u - p0.u);
      if (area == 0.0 || !std::isfinite(area)) continue;
      const double umin = std::min({p0.u, p1.u, p2.u});
      const double umax = std::max({p0.u, p1.u, p2.u});
      const double vmin = std::min({p0.v, p1.v, p2.v});
      const double vmax = std::max({p0.v, p1.v, p2.v});
      const int x0 = std::max(0, static_cast<int>(std::ceil(umin)));
      const int x1 = std::min(cam.width - 1, static_cast<int>(std::floor(umax)));
      const int y0 = std::max(0, static_cast<int>(std::ceil(vmin)));
      const int y1 = std::min(cam.height - 1, static_cast<int>(std::floor(vmax)));
      if (x0 > x1 || y0 > y1) continue;
      const double inv_area = 1.0 / area;
      for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
          const double w0 = ((p1.u - x) * (p2.v - y) - (p1.v - y) * (p2.u - x)) * inv_area;
          const double w1 = ((p2.u - x) * (p0.v - y) - (p2.v - y) * (p0.u - x)) * inv_area;
          const double w2 = 1.0 - w0 - w1;
          constexpr double eps = -1e-12;
          if (w0 < eps || w1 < eps || w2 < eps) continue;
          const double inv_z = w0 * p0.inv_z + w1 * p1.inv_z + w2 * p2.inv_z;
          if (!(inv_z > 0.0)) continue;
          const double z = 1.0 / inv_z;
          const auto idx = static_cast<std::size_t>(y) * cam.width + x;
          if (z < zbuf[idx]) {
            zbuf[idx] = z;
            out.labels[idx] = tri.label;
          }
        }
      }
    }
  }
  for (std::size_t i = 0; i < zbuf.size(); ++i) {
    if (std::isfinite(zbuf[i])) out.depth.values[i] = static_cast<float>(zbuf[i]);
  }
  return out;
}

Rendering render_scene(const Scene& scene, const PinholeCamera& cam) {
  return rasterize(scene_triangles(scene), cam);
}

DepthMap render_depth(const Scene& scene, const PinholeCamera& cam) {
  return render_scene(scene, cam).depth;
}

}  // namespace voxsem::forge
