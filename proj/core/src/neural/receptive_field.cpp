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

#include "voxsem/neural/receptive_field.hpp"

#include <algorithm>
#include <map>

#include "voxsem/common/error.hpp"

namespace voxsem::nn {

std::vector<LayerReceptiveField> receptive_field(const NetworkSpec& spec) {
  spec.validate();
  std::map<std::string, LayerReceptiveField> by_name;
  by_name[kInputName] = {kInputName, 1, 1, spec.voxel_size};
  std::vector<LayerReceptiveField> out;
  for (const auto& l : spec.layers) {
    LayerReceptiveField rf;
    rf.name = l.name;
    const LayerReceptiveField& in = by_name.at(l.inputs.front());
    switch (l.type) {
      case LayerType::Conv: {
        const int support = l.dilation * (l.kernel - 1) + 1;
        rf.voxels = in.voxels + (support - 1) * in.jump;
        rf.jump = in.jump * l.stride;
        break;
      }
      case LayerType::MaxPool:
        rf.voxels = in.voxels + (l.window - 1) * in.jump;
        rf.jump = in.jump * l.stride;
        break;
      case LayerType::Relu:
        rf.voxels = in.voxels;
        rf.jump = in.jump;
        break;
      case LayerType::Add:
      case LayerType::Concat:
        rf.voxels = 0;
        rf.jump = in.jump;
        for (const auto& name : l.inputs) {
          const LayerReceptiveField& o = by_name.at(name);
          if (o.jump != rf.jump) {
            throw ValidationError("layer '" + l.name + "': inputs have different strides");
          }
          rf.voxels = std::max(rf.voxels, o.voxels);
        }
        break;
    }
    rf.meters = rf.voxels * spec.voxel_size;
    by_name[l.name] = rf;
    out.push_back(rf);
  }
  return out;
}

const LayerReceptiveField& receptive_field_of(const std::vector<LayerReceptiveField>& rf,
                                              const std::string& name) {
  for (const auto& r : rf) {
    if (r.name == name) return r;
  }
  throw ValidationError("no receptive field entry for '" + name + "'");
}

std::vector<std::uint8_t> receptive_set(const NetworkSpec& spec, const std::string& layer,
                                        int z, int y, int x) {
  const auto shapes = spec.shapes();
  if (!shapes.count(layer) || layer == kInputName) {
    throw ValidationError("no layer named '" + layer + "'");
  }
  const Shape& target = shapes.at(layer);
  if (z < 0 || y < 0 || x < 0 || z >= target.d() || y >= target.h() || x >= target.w()) {
    throw ValidationError("receptive_set: voxel outside layer '" + layer + "' " + target.str());
  }
  auto mask_for = [&](const std::string& name) {
    const Shape& s = shapes.at(name);
    return std::vector<std::uint8_t>(static_cast<std::size_t>(s.spatial()), 0);
  };
  std::map<std::string, std::vector<std::uint8_t>> masks;
  masks[layer] = mask_for(layer);
  masks[layer][(static_cast<std::int64_t>(z) * target.h() + y) * target.w() + x] = 1;

  for (std::size_t ii = spec.layers.size(); ii-- > 0;) {
    const LayerSpec& l = spec.layers[ii];
    auto it = masks.find(l.name);
    if (it == masks.end()) continue;
    const std::vector<std::uint8_t> mask = std::move(it->second);
    masks.erase(it);
    const Shape& os = shapes.at(l.name);
    for (const auto& in_name : l.inputs) {
      auto& dst = masks.try_emplace(in_name, mask_for(in_name)).first->second;
      const Shape& is = shapes.at(in_name);
      if (l.type == LayerType::Relu || l.type == LayerType::Add || l.type == LayerType::Concat) {
        for (std::size_t k = 0; k < mask.size(); ++k) dst[k] |= mask[k];
        continue;
      }
      const bool conv = l.type == LayerType::Conv;
      const int taps = conv ? l.kernel : l.window;
      const int step = conv ? l.dilation : 1;
      const int pad = conv ? l.padding : 0;
      for (int oz = 0; oz < os.d(); ++oz) {
        for (int oy = 0; oy < os.h(); ++oy) {
          for (int ox = 0; ox < os.w(); ++ox) {
            if (!mask[(static_cast<std::int64_t>(oz) * os.h() + oy) * os.w() + ox]) continue;
            for (int a = 0; a < taps; ++a) {
              const int iz = oz * l.stride - pad + a * step;
              if (iz < 0 || iz >= is.d()) continue;
              for (int b = 0; b < taps; ++b) {
                const int iy = oy * l.stride - pad + b * step;
                if (iy < 0 || iy >= is.h()) continue;
                for (int e = 0; e < taps; ++e) {
                  const int ix = ox * l.stride - pad + e * step;
                  if (ix < 0 || ix >= is.w()) continue;
                  dst[(static_cast<std::int64_t>(iz) * is.h() + iy) * is.w() + ix] = 1;
                }
              }
            }
          }
        }
      }
    }
  }
  auto it = masks.find(kInputName);
  return it == masks.end() ? mask_for(kInputName) : it->second;
}

}  // namespace voxsem::nn
