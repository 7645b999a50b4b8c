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

#include "voxsem/ssc/sscnet.hpp"

#include <cmath>
#include <string>

#include "voxsem/common/error.hpp"

namespace voxsem::ssc {

using nn::LayerSpec;
using nn::LayerType;
using nn::NetworkSpec;

namespace {

class Builder {
 public:
  explicit Builder(NetworkSpec& spec) : spec_(spec) {}

  std::string conv(const std::string& name, const std::string& in, int out, int k,
                   int stride = 1, int dilation = 1) {
    LayerSpec l;
    l.name = name;
    l.type = LayerType::Conv;
    l.inputs = {in};
    l.out_channels = out;
    l.kernel = k;
    l.stride = stride;
    l.dilation = dilation;
    l.padding = dilation * (k - 1) / 2;
    spec_.layers.push_back(l);
    return name;
  }

  std::string relu(const std::string& name, const std::string& in) {
    return simple(name, LayerType::Relu, {in});
  }

  std::string add(const std::string& name, const std::string& a, const std::string& b) {
    return simple(name, LayerType::Add, {a, b});
  }

  std::string concat(const std::string& name, std::vector<std::string> inputs) {
    return simple(name, LayerType::Concat, std::move(inputs));
  }

  std::string pool(const std::string& name, const std::string& in) {
    LayerSpec l;
    l.name = name;
    l.type = LayerType::MaxPool;
    l.inputs = {in};
    l.window = 2;
    l.stride = 2;
    spec_.layers.push_back(l);
    return name;
  }

  /// Two convs with an additive shortcut; `project` inserts a 1x1 conv on
  /// the shortcut path.
  std::string residual(const std::string& p, const std::string& in, int ch, int dilation,
                       bool project) {
    const std::string a = relu(p + "_a_relu", conv(p + "_a", in, ch, 3, 1, dilation));
    const std::string b = conv(p + "_b", a, ch, 3, 1, dilation);
    const std::string shortcut = project ? conv(p + "_proj", in, ch, 1) : in;
    return relu(p + "_relu", add(p + "_add", b, shortcut));
  }

 private:
  std::string simple(const std::string& name, LayerType t, std::vector<std::string> inputs) {
    LayerSpec l;
    l.name = name;
    l.type = t;
    l.inputs = std::move(inputs);
    spec_.layers.push_back(l);
    return name;
  }

  NetworkSpec& spec_;
};

int width(double base, double m) {
  const int w = static_cast<int>(std::lround(base * m));
  if (w < 1) throw ValidationError("channel multiplier leaves a layer without channels");
  return w;
}

}  // namespace

GridDims output_dims(const GridDims& d) {
  for (int v : {d.nx, d.ny, d.nz}) {
    if (v < kOutputReduction || v % kOutputReduction != 0) {
      throw ValidationError("input dims " + std::to_string(d.nx) + "x" + std::to_string(d.ny) +
                            "x" + std::to_string(d.nz) + " are not divisible by 4");
    }
  }
  return {d.nx / kOutputReduction, d.ny / kOutputReduction, d.nz / kOutputReduction};
}

GridSpec output_grid(const GridSpec& g) {
  GridSpec out = g;
  out.dims = output_dims(g.dims);
  out.voxel_size = g.voxel_size * kOutputReduction;
  return out;
}

NetworkSpec build_sscnet(const GridDims& input_dims, double voxel_size,
                         const SscnetOptions& options) {
  (void)output_dims(input_dims);
  if (!(options.channel_multiplier > 0.0)) {
    throw ValidationError("channel multiplier must be positive");
  }
  if (options.num_classes < 2) throw ValidationError("need at least two classes");
  const double m = options.channel_multiplier;
  NetworkSpec spec;
  spec.input_channels = 1;
  spec.input_dims = input_dims;
  spec.voxel_size = voxel_size;
  Builder b(spec);

  std::string x = b.relu("conv1_relu", b.conv("conv1", nn::kInputName, width(16, m), 7, 2));
  x = b.residual("res1", x, width(32, m), 1, true);
  x = b.pool("pool", x);
  const std::string feat = b.residual("res2", x, width(64, m), 1, true);
  const std::string c1 = b.residual("ctx1", feat, width(64, m), 2, false);
  const std::string c2 = b.residual("ctx2", c1, width(64, m), 2, false);
  const std::string c3 = b.residual("ctx3", c2, width(64, m), 2, false);
  x = b.concat("concat", {feat, c1, c2, c3});
  x = b.relu("head1_relu", b.conv("head1", x, width(128, m), 1));
  x = b.relu("head2_relu", b.conv("head2", x, width(128, m), 1));
  b.conv("logits", x, options.num_classes, 1);
  validate_sscnet(spec, options.num_classes);
  return spec;
}

NetworkSpec build_sscnet(const GridSpec& input_grid, const SscnetOptions& options) {
  return build_sscnet(input_grid.dims, input_grid.voxel_size, options);
}

void validate_sscnet(const NetworkSpec& spec, int num_classes) {
  const auto shapes = spec.shapes();
  const GridDims out = output_dims(spec.input_dims);
  const nn::Shape expected = nn::make_shape(1, num_classes, out.nz, out.ny, out.nx);
  nn::require_shape(shapes.at(spec.output_layer().name), expected, "network output");
}

}  // namespace voxsem::ssc
