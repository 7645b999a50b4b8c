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

#include "voxsem/ssc/sampling.hpp"

#include <algorithm>
#include <array>
#include <vector>

#include "voxsem/common/categories.hpp"
#include "voxsem/common/error.hpp"
#include "voxsem/common/rng.hpp"

namespace voxsem::ssc {

namespace {

void check_pair(const LabelGrid& labels, const StateGrid& states) {
  if (!(labels.spec.dims == states.spec.dims) || !labels.consistent() || !states.consistent()) {
    throw ValidationError("label and state grids differ in shape");
  }
}

}  // namespace

DownsampledTargets downsample_labels(const LabelGrid& labels, const StateGrid& states,
                                     int factor) {
  check_pair(labels, states);
  if (factor < 1) throw ValidationError("downsample factor must be >= 1");
  const GridDims& d = labels.spec.dims;
  if (d.nx % factor || d.ny % factor || d.nz % factor) {
    throw ValidationError("grid dims are not divisible by the downsample factor");
  }
  GridSpec out_spec = labels.spec;
  out_spec.dims = {d.nx / factor, d.ny / factor, d.nz / factor};
  out_spec.voxel_size = labels.spec.voxel_size * factor;
  DownsampledTargets out{LabelGrid(out_spec), StateGrid(out_spec)};

  for (int k = 0; k < out_spec.dims.nz; ++k) {
    for (int j = 0; j < out_spec.dims.ny; ++j) {
      for (int i = 0; i < out_spec.dims.nx; ++i) {
        std::array<int, 256> lh{};
        std::array<int, kVoxelStateCount> sh{};
        for (int c = 0; c < factor; ++c) {
          for (int b = 0; b < factor; ++b) {
            for (int a = 0; a < factor; ++a) {
              const int x = i * factor + a, y = j * factor + b, z = k * factor + c;
              ++lh[labels.at(x, y, z)];
              ++sh[static_cast<int>(states.at(x, y, z))];
            }
          }
        }
        out.labels.at(i, j, k) =
            static_cast<std::uint8_t>(std::max_element(lh.begin(), lh.end()) - lh.begin());
        VoxelState s;
        if (sh[static_cast<int>(VoxelState::Occluded)] > 0) {
          s = VoxelState::Occluded;
        } else if (sh[static_cast<int>(VoxelState::Surface)] > 0) {
          s = VoxelState::Surface;
        } else {
          s = static_cast<VoxelState>(std::max_element(sh.begin(), sh.end()) - sh.begin());
        }
        out.states.at(i, j, k) = s;
      }
    }
  }
  return out;
}

BalancedWeights balance_sample(const LabelGrid& labels, const StateGrid& states,
                               std::uint64_t seed) {
  check_pair(labels, states);
  BalancedWeights out{WeightGrid(labels.spec, 0), {}};
  std::vector<std::int64_t> empty;
  for (std::int64_t v = 0; v < labels.spec.count(); ++v) {
    const VoxelState s = states[v];
    if (labels[v] >= kNumClasses) throw ValidationError("label out of range in balance_sample");
    if (labels[v] != 0) {
      if (s == VoxelState::Surface || s == VoxelState::Occluded) {
        out.weights[v] = 1;
        ++out.report.occupied;
      }
    } else if (s == VoxelState::Occluded) {
      empty.push_back(v);
    }
  }
  out.report.available_empty = static_cast<std::int64_t>(empty.size());
  if (out.report.occupied == 0) {
    out.report.warning = "no occupied voxels; all weights are zero";
    return out;
  }
  const std::int64_t take = std::min<std::int64_t>(2 * out.report.occupied, out.report.available_empty);
  // Partial Fisher-Yates selects `take` distinct indices uniformly.
  Rng rng(seed);
  for (std::int64_t i = 0; i < take; ++i) {
    const std::int64_t j = i + static_cast<std::int64_t>(rng.below(empty.size() - i));
    std::swap(empty[i], empty[j]);
    out.weights[empty[i]] = 1;
  }
  out.report.sampled_empty = take;
  return out;
}

}  // namespace voxsem::ssc
