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

#include "voxsem/ssc/infer.hpp"

#include "voxsem/common/error.hpp"
#include "voxsem/neural/checkpoint.hpp"
#include "voxsem/neural/loss.hpp"
#include "voxsem/ssc/dataset.hpp"
#include "voxsem/ssc/sscnet.hpp"
#include "voxsem/tsdf/tsdf.hpp"

namespace voxsem::ssc {

nn::Network<float> load_network(const nn::NetworkSpec& spec,
                                const std::filesystem::path& checkpoint) {
  nn::Network<float> net(spec);
  try {
    net.load_state(nn::read_checkpoint(checkpoint));
  } catch (const ValidationError& e) {
    throw ValidationError(checkpoint.string() + ": " + e.what());
  }
  return net;
}

Prediction predict(nn::Network<float>& net, const nn::Tensor<float>& input,
                   const GridSpec& input_grid) {
  const nn::Tensor<float>& logits = net.forward(input);
  Prediction p;
  p.probabilities = nn::softmax_channels(logits);
  GridSpec out = output_grid(input_grid);
  const nn::Shape& s = logits.shape;
  if (s.d() != out.dims.nz || s.h() != out.dims.ny || s.w() != out.dims.nx) {
    throw ValidationError("network output " + s.str() + " does not match the output grid");
  }
  p.labels = LabelGrid(out, 0);
  const std::int64_t S = s.spatial();
  for (std::int64_t v = 0; v < S; ++v) {
    int best = 0;
    for (int c = 1; c < s.c(); ++c) {
      if (logits.data[c * S + v] > logits.data[best * S + v]) best = c;
    }
    p.labels[v] = static_cast<std::uint8_t>(best);
  }
  return p;
}

Prediction infer(nn::Network<float>& net, const DepthMap& depth, const PinholeCamera& cam,
                 const GridSpec& input_grid, const Aabb& room, double d_max) {
  const tsdf::EncodedView v = tsdf::encode_view(depth, cam, input_grid, room, d_max);
  return predict(net, grid_to_tensor(tsdf::normalize(v.tsdf)), input_grid);
}

}  // namespace voxsem::ssc
