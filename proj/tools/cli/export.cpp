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

#include "cli/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "voxsem/common/error.hpp"

namespace voxsem::cli {

const std::array<Rgb, kNumClasses> kClassPalette = {{
    {255, 255, 255},
    {166, 206, 227},
    {210, 180, 140},
    {150, 150, 150},
    {0, 200, 220},
    {51, 160, 44},
    {251, 154, 153},
    {106, 61, 154},
    {255, 127, 0},
    {20, 20, 20},
    {140, 81, 10},
    {255, 221, 0},
}};

const std::array<Rgb, kVoxelStateCount> kStatePalette = {{
    {255, 255, 255},
    {228, 26, 28},
    {55, 126, 184},
    {200, 200, 200},
    {90, 90, 90},
}};

namespace {

// Corner c has bits (x, y, z).
constexpr std::array<std::array<int, 3>, 12> kCubeFaces = {{
    {0, 2, 3}, {0, 3, 1},  // -z
    {4, 5, 7}, {4, 7, 6},  // +z
    {0, 1, 5}, {0, 5, 4},  // -y
    {2, 6, 7}, {2, 7, 3},  // +y
    {0, 4, 6}, {0, 6, 2},  // -x
    {1, 3, 7}, {1, 7, 5},  // +x
}};

template <typename Vertex, typename Face>
std::int64_t for_each_cube(const VoxelGrid<std::uint8_t>& labels, Vertex&& vertex, Face&& face) {
  if (!labels.consistent()) throw ValidationError("label grid is inconsistent");
  const GridSpec& s = labels.spec;
  std::int64_t cubes = 0;
  for (int k = 0; k < s.dims.nz; ++k) {
    for (int j = 0; j < s.dims.ny; ++j) {
      for (int i = 0; i < s.dims.nx; ++i) {
        const std::uint8_t l = labels.at(i, j, k);
        if (l == 0) continue;
        if (l >= kNumClasses) throw ValidationError("label out of range in export");
        for (int c = 0; c < 8; ++c) {
          vertex(s.origin.x + (i + (c & 1)) * s.voxel_size,
                 s.origin.y + (j + ((c >> 1) & 1)) * s.voxel_size,
                 s.origin.z + (k + ((c >> 2) & 1)) * s.voxel_size, kClassPalette[l]);
        }
        for (const auto& f : kCubeFaces) face(cubes * 8, f);
        ++cubes;
      }
    }
  }
  return cubes;
}

std::int64_t count_cubes(const VoxelGrid<std::uint8_t>& labels) {
  return std::count_if(labels.data.begin(), labels.data.end(), [](std::uint8_t l) { return l != 0; });
}

struct MontageLayout {
  int slices, tile_w, tile_h, cols, rows, width, height;
};

MontageLayout layout(const GridDims& d, int axis) {
  const int e[3] = {d.nx, d.ny, d.nz};
  MontageLayout m;
  m.slices = e[axis];
  m.tile_w = e[axis == 0 ? 1 : 0];
  m.tile_h = e[axis == 2 ? 1 : 2];
  m.cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(m.slices))));
  m.rows = (m.slices + m.cols - 1) / m.cols;
  m.width = m.cols * (m.tile_w + 1) + 1;
  m.height = m.rows * (m.tile_h + 1) + 1;
  return m;
}

template <typename Color>
RgbImage montage(const GridSpec& spec, int axis, Color&& color) {
  if (axis < 0 || axis > 2) throw ValidationError("slice axis must be 0, 1 or 2");
  const MontageLayout m = layout(spec.dims, axis);
  RgbImage img{m.width, m.height,
               std::vector<std::uint8_t>(static_cast<std::size_t>(m.width) * m.height * 3, 0)};
  for (int s = 0; s < m.slices; ++s) {
    const int x0 = (s % m.cols) * (m.tile_w + 1) + 1;
    const int y0 = (s / m.cols) * (m.tile_h + 1) + 1;
    for (int r = 0; r < m.tile_h; ++r) {
      for (int c = 0; c < m.tile_w; ++c) {
        int idx[3];
        idx[axis] = s;
        idx[axis == 0 ? 1 : 0] = c;
        idx[axis == 2 ? 1 : 2] = r;
        const Rgb rgb = color(spec.linear(idx[0], idx[1], idx[2]));
        std::uint8_t* px = &img.pixels[(static_cast<std::size_t>(y0 + r) * m.width + x0 + c) * 3];
        px[0] = rgb[0];
        px[1] = rgb[1];
        px[2] = rgb[2];
      }
    }
  }
  return img;
}

}  // namespace

std::string voxel_ply(const VoxelGrid<std::uint8_t>& labels) {
  const std::int64_t n = count_cubes(labels);
  std::string out = "ply\nformat ascii 1.0\ncomment voxsem voxel export\n";
  out += "element vertex " + std::to_string(8 * n) + "\n";
  out += "property float x\nproperty float y\nproperty float z\n";
  out += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out += "element face " + std::to_string(12 * n) + "\n";
  out += "property list uchar int vertex_indices\nend_header\n";
  std::string faces;
  char buf[128];
  for_each_cube(
      labels,
      [&](double x, double y, double z, const Rgb& c) {
        std::snprintf(buf, sizeof(buf), "%.6g %.6g %.6g %d %d %d\n", x, y, z, c[0], c[1], c[2]);
        out += buf;
      },
      [&](std::int64_t base, const std::array<int, 3>& f) {
        std::snprintf(buf, sizeof(buf), "3 %lld %lld %lld\n", static_cast<long long>(base + f[0]),
                      static_cast<long long>(base + f[1]), static_cast<long long>(base + f[2]));
        faces += buf;
      });
  return out + faces;
}

std::string voxel_obj(const VoxelGrid<std::uint8_t>& labels) {
  std::string out = "# voxsem voxel export\n";
  std::string faces;
  char buf[128];
  for_each_cube(
      labels,
      [&](double x, double y, double z, const Rgb& c) {
        std::snprintf(buf, sizeof(buf), "v %.6g %.6g %.6g %.4f %.4f %.4f\n", x, y, z, c[0] / 255.0,
                      c[1] / 255.0, c[2] / 255.0);
        out += buf;
      },
      [&](std::int64_t base, const std::array<int, 3>& f) {
        std::snprintf(buf, sizeof(buf), "f %lld %lld %lld\n", static_cast<long long>(base + f[0] + 1),
                      static_cast<long long>(base + f[1] + 1),
                      static_cast<long long>(base + f[2] + 1));
        faces += buf;
      });
  return out + faces;
}

RgbImage scalar_montage(const VoxelGrid<float>& grid, int axis) {
  if (!grid.consistent()) throw ValidationError("scalar grid is inconsistent");
  float scale = 0.0f;
  for (float v : grid.data) scale = std::max(scale, std::abs(v));
  return montage(grid.spec, axis, [&](std::int64_t i) {
    const float t = scale > 0.0f ? std::clamp(grid.data[i] / scale, -1.0f, 1.0f) : 0.0f;
    const auto fade = static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - std::abs(t))));
    return t >= 0.0f ? Rgb{255, fade, fade} : Rgb{fade, fade, 255};
  });
}

RgbImage label_montage(const VoxelGrid<std::uint8_t>& labels, int axis, const Rgb* palette,
                       int palette_size) {
  if (!labels.consistent()) throw ValidationError("label grid is inconsistent");
  return montage(labels.spec, axis, [&](std::int64_t i) {
    const int l = labels.data[i];
    if (l >= palette_size) throw ValidationError("value outside the palette in export");
    return palette[l];
  });
}

int axis_index(const std::string& axis) {
  if (axis == "x") return 0;
  if (axis == "y") return 1;
  if (axis == "z") return 2;
  throw ValidationError("unknown axis '" + axis + "'");
}

}  // namespace voxsem::cli
