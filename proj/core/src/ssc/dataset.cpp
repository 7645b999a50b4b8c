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

#include "voxsem/ssc/dataset.hpp"

#include <cmath>
#include <string>

#include "voxsem/common/error.hpp"
#include "voxsem/ssc/sscnet.hpp"
#include "voxsem/tsdf/tsdf.hpp"
#include "voxsem/volume/voxb.hpp"

namespace voxsem::ssc {

namespace {

std::string dims_str(const GridDims& d) {
  return std::to_string(d.nx) + "x" + std::to_string(d.ny) + "x" + std::to_string(d.nz);
}

void require_grid(const GridSpec& found, const nn::NetworkSpec& spec, const std::string& what) {
  const bool same_size = std::abs(found.voxel_size - spec.voxel_size) <= 1e-6 * spec.voxel_size;
  if (!(found.dims == spec.input_dims) || !same_size) {
    throw ValidationError(what + ": expected " + dims_str(spec.input_dims) + " at " +
                          std::to_string(spec.voxel_size) + " m, found " +
                          dims_str(found.dims) + " at " + std::to_string(found.voxel_size) +
                          " m");
  }
}

}  // namespace

nn::Tensor<float> grid_to_tensor(const VoxelGrid<float>& grid) {
  const GridDims& d = grid.spec.dims;
  nn::Tensor<float> t(nn::make_shape(1, 1, d.nz, d.ny, d.nx));
  t.data = grid.data;
  return t;
}

LabelGrid binarize_labels(const LabelGrid& labels) {
  LabelGrid out = labels;
  for (auto& l : out.data) l = l != 0 ? 1 : 0;
  return out;
}

std::vector<TrainingSample> load_training_set(const forge::Manifest& manifest,
                                              const nn::NetworkSpec& spec, bool binary) {
  require_grid(manifest.grid, spec, "manifest grid");
  std::vector<TrainingSample> out;
  for (const auto& s : manifest.samples) {
    const auto tsdf_path = manifest.resolve(s.tsdf);
    const tsdf::TsdfGrid t = tsdf::load_tsdf(tsdf_path);
    if (std::abs(t.d_max - manifest.d_max) > 1e-6 * manifest.d_max) {
      throw ValidationError(tsdf_path.string() + ": d_max " + std::to_string(t.d_max) +
                            " differs from manifest d_max " + std::to_string(manifest.d_max));
    }
    require_grid(t.values.spec, spec, tsdf_path.string());
    const LabelGrid labels = load_label_grid(manifest.resolve(s.labels));
    const StateGrid states = load_state_grid(manifest.resolve(s.states));
    require_grid(labels.spec, spec, manifest.resolve(s.labels).string());
    require_grid(states.spec, spec, manifest.resolve(s.states).string());
    DownsampledTargets d = downsample_labels(labels, states, kOutputReduction);
    TrainingSample sample;
    sample.name = s.view;
    sample.input = grid_to_tensor(tsdf::normalize(t));
    sample.labels = binary ? binarize_labels(d.labels) : std::move(d.labels);
    sample.states = std::move(d.states);
    out.push_back(std::move(sample));
  }
  return out;
}

}  // namespace voxsem::ssc
