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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "voxsem/neural/conv.hpp"
#include "voxsem/neural/tensor.hpp"
#include "voxsem/volume/grid.hpp"

namespace voxsem::nn {

enum class LayerType { Conv, Relu, MaxPool, Add, Concat };

const char* to_string(LayerType t);
LayerType parse_layer_type(const std::string& s);

/// The graph input is addressed by the reserved name "input".
inline constexpr const char* kInputName = "input";

struct LayerSpec {
  std::string name;
  LayerType type = LayerType::Conv;
  std::vector<std::string> inputs;
  // Conv.
  int out_channels = 0;
  int kernel = 1;
  int stride = 1;
  int dilation = 1;
  int padding = 0;
  // MaxPool; pooling reuses `stride`.
  int window = 2;

  bool operator==(const LayerSpec&) const = default;
};

/// Layer graph in topological order. The last layer is the output.
struct NetworkSpec {
  int input_channels = 1;
  /// Input grid extent; tensors map x to w, y to h and z to d.
  GridDims input_dims;
  double voxel_size = 0.02;
  std::vector<LayerSpec> layers;

  /// Checks names, edge references, layer parameters and that every shape
  /// is computable. Throws ValidationError naming the offending layer.
  void validate() const;
  Shape input_shape() const;
  /// Output shape of every layer keyed by name, plus "input".
  std::map<std::string, Shape> shapes() const;
  const LayerSpec& layer(const std::string& name) const;
  const LayerSpec& output_layer() const { return layers.back(); }
  bool operator==(const NetworkSpec&) const = default;
};

std::string spec_to_json(const NetworkSpec& spec);
NetworkSpec spec_from_json(const std::string& text, const std::string& source);

template <typename T>
struct NamedTensor {
  std::string name;
  Tensor<T> value;
};

template <typename T>
struct ParamRef {
  std::string name;
  Tensor<T>* value = nullptr;
  Tensor<T>* grad = nullptr;
};

/// Executes a NetworkSpec. forward() caches every activation so backward()
/// can run afterwards; gradients are overwritten by each backward().
template <typename T>
class Network {
 public:
  explicit Network(NetworkSpec spec);

  const NetworkSpec& spec() const { return spec_; }

  /// He fan-in normal weights and zero biases. The output conv uses
  /// `output_scale` times the He deviation so initial logits are near zero.
  void init(std::uint64_t seed, double output_scale = 1e-2);

  const Tensor<T>& forward(const Tensor<T>& input);
  void backward(const Tensor<T>& grad_output, bool need_input_grad = false);

  const Tensor<T>& output() const;
  const Tensor<T>& activation(const std::string& name) const;
  const Tensor<T>& input_grad() const { return input_grad_; }

  std::vector<ParamRef<T>> parameters();
  std::vector<NamedTensor<T>> state() const;
  /// Throws ValidationError listing expected and found names or shapes.
  void load_state(const std::vector<NamedTensor<T>>& state);

  Conv3dParams<T>& conv(const std::string& layer_name);

 private:
  int index_of(const std::string& name) const;

  NetworkSpec spec_;
  std::vector<int> conv_slot_;
  std::vector<std::vector<int>> input_ids_;  // -1 is the graph input.
  std::vector<Conv3dParams<T>> convs_;
  std::vector<Conv3dParams<T>> conv_grads_;
  Tensor<T> input_;
  std::vector<Tensor<T>> acts_;
  std::vector<std::vector<std::int64_t>> argmax_;
  Tensor<T> input_grad_;
  bool forwarded_ = false;
};

}  // namespace voxsem::nn
