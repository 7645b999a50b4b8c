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

#include "voxsem/tsdf/tsdf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "voxsem/common/error.hpp"
#include "voxsem/common/file_io.hpp"
#include "voxsem/common/parallel.hpp"
#include "voxsem/tsdf/kdtree.hpp"

namespace voxsem::tsdf {

namespace {

void check_truncation(double d_max) {
  if (!(d_max > 0.0) || !std::isfinite(d_max)) {
    throw ValidationError("truncation d_max must be positive");
  }
}

void check_view(const DepthMap& depth, const PinholeCamera& cam,
                const GridSpec& spec) {
  spec.validate();
  cam.validate();
  depth.validate();
  if (depth.width != cam.width || depth.height != cam.height) {
    throw ValidationError("depth map and camera resolution differ");
  }
}

}  // namespace

const char* to_string(TsdfMode m) {
  switch (m) {
    case TsdfMode::Projective: return "projective";
    case TsdfMode::Accurate: return "accurate";
    case TsdfMode::Flipped: return "flipped";
  }
  return "unknown";
}

TsdfGrid projective_tsdf(const DepthMap& depth, const PinholeCamera& cam,
                         const GridSpec& spec, double d_max) {
  check_truncation(d_max);
  check_view(depth, cam, spec);
  TsdfGrid out{VoxelGrid<float>(spec, static_cast<float>(d_max)), d_max,
               TsdfMode::Projective};
  const auto& d = spec.dims;
  parallel_for(d.nz, [&](std::int64_t k0, std::int64_t k1) {
    for (int k = static_cast<int>(k0); k < k1; ++k) {
      for (int j = 0; j < d.ny; ++j) {
        for (int i = 0; i < d.nx; ++i) {
          const auto hit = project(cam, voxel_center(spec, i, j, k));
          if (!hit) continue;
          const double dp = depth.at(hit->u, hit->v);
          if (dp <= 0.0) continue;
          out.values.at(i, j, k) =
              static_cast<float>(std::clamp(dp - hit->z, -d_max, d_max));
        }
      }
    }
  });
  return out;
}

TsdfGrid accurate_tsdf(const DepthMap& depth, const PinholeCamera& cam,
                       const GridSpec& spec, double d_max,
                       const VoxelGrid<VoxelState>& states) {
  check_truncation(d_max);
  check_view(depth, cam, spec);
  if (!(states.spec.dims == spec.dims) || !states.consistent()) {
    throw ValidationError("state grid does not match the TSDF grid spec");
  }
  auto points = backproject_all(depth, cam);
  if (points.empty()) throw ValidationError("no observed surface");
  const KdTree tree(std::move(points));

  TsdfGrid out{VoxelGrid<float>(spec, static_cast<float>(d_max)), d_max,
               TsdfMode::Accurate};
  const auto& d = spec.dims;
  parallel_for(d.nz, [&](std::int64_t k0, std::int64_t k1) {
    for (int k = static_cast<int>(k0); k < k1; ++k) {
      for (int j = 0; j < d.ny; ++j) {
        for (int i = 0; i < d.nx; ++i) {
          const VoxelState s = states.at(i, j, k);
          if (s == VoxelState::OutsideRoom) continue;
          const double dist =
              tree.nearest_distance(voxel_center(spec, i, j, k), d_max);
          const double sign = s == VoxelState::Occluded ? -1.0 : 1.0;
          out.values.at(i, j, k) = static_cast<float>(sign * dist);
        }
      }
    }
  });
  return out;
}

TsdfGrid flip_tsdf(const TsdfGrid& t) {
  if (t.mode == TsdfMode::Flipped) {
    throw ValidationError("TSDF is already flipped");
  }
  TsdfGrid out = t;
  out.mode = TsdfMode::Flipped;
  // Stored values are f32, so truncated voxels flip to exactly zero.
  const float d_max = static_cast<float>(t.d_max);
  for (float& v : out.values.data) {
    const float d = std::clamp(v, -d_max, d_max);
    v = d < 0.0f ? -(d_max + d) : d_max - d;
  }
  return out;
}

VoxelGrid<float> normalize(const TsdfGrid& t) {
  check_truncation(t.d_max);
  VoxelGrid<float> out = t.values;
  const float inv = static_cast<float>(1.0 / t.d_max);
  for (float& v : out.data) v = std::clamp(v * inv, -1.0f, 1.0f);
  return out;
}

std::vector<std::uint8_t> encode_tsdf(const TsdfGrid& t) {
  check_truncation(t.d_max);
  return encode_voxb(t.values, VoxbTsdfHeader{static_cast<std::uint8_t>(t.mode),
                                              static_cast<float>(t.d_max)});
}

TsdfGrid tsdf_from_voxb(const VoxbFile& f, const std::string& source) {
  if (!f.mode || !f.d_max || *f.mode > 2) {
    throw ValidationError(source + ": not a TSDF VOXB file (missing mode or d_max)");
  }
  return TsdfGrid{scalar_grid(f, source), static_cast<double>(*f.d_max),
                  static_cast<TsdfMode>(*f.mode)};
}

TsdfGrid load_tsdf(const std::filesystem::path& path) {
  return tsdf_from_voxb(read_voxb(path), path.string());
}

EncodedView encode_view(const DepthMap& depth, const PinholeCamera& cam,
                        const GridSpec& spec, const Aabb& room_bounds, double d_max,
                        TsdfMode mode, bool flip) {
  if (mode == TsdfMode::Flipped) {
    throw ValidationError("encode mode must be projective or accurate");
  }
  EncodedView v;
  v.states = classify_voxels(depth, cam, spec, room_bounds);
  v.tsdf = mode == TsdfMode::Projective ? projective_tsdf(depth, cam, spec, d_max)
                                        : accurate_tsdf(depth, cam, spec, d_max, v.states);
  if (flip) v.tsdf = flip_tsdf(v.tsdf);
  return v;
}

}  // namespace voxsem::tsdf
