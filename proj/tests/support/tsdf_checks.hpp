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
#include <vector>

#include "support/fixtures.hpp"
#include "voxsem/tsdf/tsdf.hpp"

namespace voxsem::testing {

struct AdjacentPairStats {
  // Largest |a - b| over all face-adjacent pairs of the flipped TSDF.
  double flipped_max = 0.0;
  bool flipped_max_straddles = false;
  // Largest |a - b| over adjacent occluded pairs both farther than two voxels
  // from every surface sample, in the unflipped accurate TSDF.
  double far_occluded_max = 0.0;
  std::int64_t far_occluded_pairs = 0;
};

struct EncodedScene {
  PinholeCamera cam;
  GridSpec grid;
  DepthMap depth;
  VoxelGrid<VoxelState> states;
  tsdf::TsdfGrid accurate;
  std::vector<double> distances;  // untruncated brute-force distances
};

inline EncodedScene encode_random_scene(std::uint64_t seed, double d_max,
                                        bool with_distances = true) {
  EncodedScene s;
  s.cam = small_camera();
  s.grid = small_grid();
  s.depth = forge::rasterize(random_tsdf_scene(seed), s.cam).depth;
  s.states = classify_voxels(s.depth, s.cam, s.grid, huge_room());
  s.accurate = tsdf::accurate_tsdf(s.depth, s.cam, s.grid, d_max, s.states);
  if (with_distances) s.distances = brute_force_distances(s.depth, s.cam, s.grid);
  return s;
}

// A pair straddles the surface when one side is occluded and the other is not.
inline AdjacentPairStats adjacent_pair_stats(const EncodedScene& s) {
  const auto flipped = tsdf::flip_tsdf(s.accurate);
  const auto& g = s.grid;
  const double far = 2.0 * g.voxel_size;
  AdjacentPairStats st;
  for (int k = 0; k < g.dims.nz; ++k) {
    for (int j = 0; j < g.dims.ny; ++j) {
      for (int i = 0; i < g.dims.nx; ++i) {
        const std::int64_t a = g.linear(i, j, k);
        const int step[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        for (const auto& d : step) {
          const int ii = i + d[0], jj = j + d[1], kk = k + d[2];
          if (ii >= g.dims.nx || jj >= g.dims.ny || kk >= g.dims.nz) continue;
          const std::int64_t b = g.linear(ii, jj, kk);
          const double fd = std::abs(static_cast<double>(flipped.values[a]) - flipped.values[b]);
          const bool straddles =
              (s.states[a] == VoxelState::Occluded) != (s.states[b] == VoxelState::Occluded);
          if (fd > st.flipped_max) {
            st.flipped_max = fd;
            st.flipped_max_straddles = straddles;
          } else if (fd == st.flipped_max && straddles) {
            st.flipped_max_straddles = true;
          }
          if (s.states[a] == VoxelState::Occluded && s.states[b] == VoxelState::Occluded &&
              s.distances[static_cast<std::size_t>(a)] > far &&
              s.distances[static_cast<std::size_t>(b)] > far) {
            const double ud =
                std::abs(static_cast<double>(s.accurate.values[a]) - s.accurate.values[b]);
            st.far_occluded_max = std::max(st.far_occluded_max, ud);
            ++st.far_occluded_pairs;
          }
        }
      }
    }
  }
  return st;
}

// Largest deviation of the accurate TSDF from the brute-force oracle.
inline double accurate_oracle_error(const EncodedScene& s) {
  const double d_max = s.accurate.d_max;
  double worst = 0.0;
  for (std::int64_t idx = 0; idx < s.grid.count(); ++idx) {
    const auto st = s.states[idx];
    double expect = d_max;
    if (st != VoxelState::OutsideRoom) {
      const double mag = std::min(s.distances[static_cast<std::size_t>(idx)], d_max);
      expect = st == VoxelState::Occluded ? -mag : mag;
    }
    worst = std::max(worst, std::abs(expect - static_cast<double>(s.accurate.values[idx])));
  }
  return worst;
}

}  // namespace voxsem::testing
