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

#include "voxsem/neural/network.hpp"

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "voxsem/common/error.hpp"
#include "voxsem/common/rng.hpp"
#include "voxsem/neural/ops.hpp"
#include "voxsem/neural/pool.hpp"

namespace voxsem::nn {

using nlohmann::json;

namespace {

constexpr int kSpecFormatVersion = 1;

ConvGeometry geometry_of(const LayerSpec& l, int in_channels) {
  ConvGeometry g;
  g.in_channels = in_channels;
  g.out_channels = l.out_channels;
  g.kernel = l.kernel;
  g.stride = l.stride;
  g.dilation = l.dilation;
  g.padding = l.padding;
  return g;
}

int pool_extent(int in, int window, int stride) { return (in - window) / stride + 1; }

}  // namespace

const char* to_string(LayerType t) {
  switch (t) {
    case LayerType::Conv: return "conv";
    case LayerType::Relu: return "relu";
    case LayerType::MaxPool: return "maxpool";
    case LayerType::Add: return "add";
    case LayerType::Concat: return "concat";
  }
  return "?";
}

LayerType parse_layer_type(const std::string& s) {
  if (s == "conv") return LayerType::Conv;
  if (s == "relu") return LayerType::Relu;
  if (s == "maxpool") return LayerType::MaxPool;
  if (s == "add") return LayerType::Add;
  if (s == "concat") return LayerType::Concat;
  throw ValidationError("unsupported layer type '" + s + "'");
}

Shape NetworkSpec::input_shape() const {
  return make_shape(1, input_channels, input_dims.nz, input_dims.ny, input_dims.nx);
}

std::map<std::string, Shape> NetworkSpec::shapes() const {
  if (input_channels < 1) throw ValidationError("network input needs >= 1 channel");
  if (input_dims.nx < 1 || input_dims.ny < 1 || input_dims.nz < 1) {
    throw ValidationError("network input dims must be >= 1");
  }
  if (!(voxel_size > 0.0)) throw ValidationError("network voxel_size must be positive");
  if (layers.empty()) throw ValidationError("network has no layers");
  std::map<std::string, Shape> out;
  out[kInputName] = input_shape();
  for (const auto& l : layers) {
    const std::string where = "layer '" + l.name + "'";
    if (l.name.empty() || l.name == kInputName || out.count(l.name)) {
      throw ValidationError(where + ": name empty, reserved or duplicated");
    }
    std::vector<Shape> ins;
    for (const auto& in : l.inputs) {
      auto it = out.find(in);
      if (it == out.end()) throw ValidationError(where + ": unknown or later input '" + in + "'");
      ins.push_back(it->second);
    }
    const bool multi = l.type == LayerType::Add || l.type == LayerType::Concat;
    if (multi ? ins.size() < 2 : ins.size() != 1) {
      throw ValidationError(where + ": wrong number of inputs for " + to_string(l.type));
    }
    Shape s = ins.front();
    try {
      switch (l.type) {
        case LayerType::Conv: {
          const ConvGeometry g = geometry_of(l, s.c());
          g.validate();
          s = g.output_shape(s);
          break;
        }
        case LayerType::Relu:
          break;
        case LayerType::MaxPool:
          if (l.window < 1 || l.stride < 1) throw ValidationError("pool window/stride must be >= 1");
          if (l.window > s.d() || l.window > s.h() || l.window > s.w()) {
            throw ValidationError("pool window exceeds input " + s.str());
          }
          s = make_shape(s.n(), s.c(), pool_extent(s.d(), l.window, l.stride),
                         pool_extent(s.h(), l.window, l.stride),
                         pool_extent(s.w(), l.window, l.stride));
          break;
        case LayerType::Add:
          for (const auto& o : ins) require_shape(o, s, "add input");
          break;
        case LayerType::Concat: {
          int c = 0;
          for (const auto& o : ins) {
            Shape probe = o;
            probe.dims[1] = s.c();
            require_shape(probe, s, "concat input");
            c += o.c();
          }
          s.dims[1] = c;
          break;
        }
      }
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
    out[l.name] = s;
  }
  return out;
}

void NetworkSpec::validate() const { (void)shapes(); }

const LayerSpec& NetworkSpec::layer(const std::string& name) const {
  for (const auto& l : layers) {
    if (l.name == name) return l;
  }
  throw ValidationError("no layer named '" + name + "'");
}

std::string spec_to_json(const NetworkSpec& spec) {
  json j;
  j["format_version"] = kSpecFormatVersion;
  j["input"] = {{"channels", spec.input_channels},
                {"dims", json::array({spec.input_dims.nx, spec.input_dims.ny, spec.input_dims.nz})},
                {"voxel_size", spec.voxel_size}};
  j["layers"] = json::array();
  for (const auto& l : spec.layers) {
    json e{{"name", l.name}, {"type", to_string(l.type)}, {"inputs", l.inputs}};
    if (l.type == LayerType::Conv) {
      e["out_channels"] = l.out_channels;
      e["kernel"] = l.kernel;
      e["stride"] = l.stride;
      e["dilation"] = l.dilation;
      e["padding"] = l.padding;
    } else if (l.type == LayerType::MaxPool) {
      e["window"] = l.window;
      e["stride"] = l.stride;
    }
    j["layers"].push_back(e);
  }
  return j.dump(2) + "\n";
}

NetworkSpec spec_from_json(const std::string& text, const std::string& source) {
  NetworkSpec spec;
  try {
    const json j = json::parse(text);
    if (!j.contains("format_version") || j["format_version"].get<int>() != kSpecFormatVersion) {
      throw ValidationError(source + ": unsupported network format_version");
    }
    const json& in = j.at("input");
    spec.input_channels = in.at("channels").get<int>();
    const json& d = in.at("dims");
    spec.input_dims = {d.at(0).get<int>(), d.at(1).get<int>(), d.at(2).get<int>()};
    spec.voxel_size = in.at("voxel_size").get<double>();
    for (const auto& e : j.at("layers")) {
      LayerSpec l;
      l.name = e.at("name").get<std::string>();
      l.type = parse_layer_type(e.at("type").get<std::string>());
      l.inputs = e.at("inputs").get<std::vector<std::string>>();
      if (l.type == LayerType::Conv) {
        l.out_channels = e.at("out_channels").get<int>();
        l.kernel = e.at("kernel").get<int>();
        l.stride = e.at("stride").get<int>();
        l.dilation = e.at("dilation").get<int>();
        l.padding = e.at("padding").get<int>();
      } else if (l.type == LayerType::MaxPool) {
        l.window = e.at("window").get<int>();
        l.stride = e.at("stride").get<int>();
      }
      spec.layers.push_back(l);
    }
  } catch (const json::exception& e) {
    throw ValidationError(source + ": " + e.what());
  }
  spec.validate();
  return spec;
}

template <typename T>
Network<T>::Network(NetworkSpec spec) : spec_(std::move(spec)) {
  const auto shapes = spec_.shapes();
  for (const auto& l : spec_.layers) {
    std::vector<int> ids;
    for (const auto& in : l.inputs) ids.push_back(in == kInputName ? -1 : index_of(in));
    input_ids_.push_back(ids);
    if (l.type == LayerType::Conv) {
      conv_slot_.push_back(static_cast<int>(convs_.size()));
      Conv3dParams<T> p;
      p.geometry = geometry_of(l, shapes.at(l.inputs.front()).c());
      p.weight = Tensor<T>(p.geometry.weight_shape());
      p.bias = Tensor<T>(p.geometry.bias_shape());
      conv_grads_.push_back(p);
      convs_.push_back(std::move(p));
    } else {
      conv_slot_.push_back(-1);
    }
  }
  acts_.resize(spec_.layers.size());
  argmax_.resize(spec_.layers.size());
}

template <typename T>
int Network<T>::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < spec_.layers.size(); ++i) {
    if (spec_.layers[i].name == name) return static_cast<int>(i);
  }
  throw ValidationError("no layer named '" + name + "'");
}

template <typename T>
void Network<T>::init(std::uint64_t seed, double output_scale) {
  const int last = static_cast<int>(spec_.layers.size()) - 1;
  for (std::size_t i = 0; i < spec_.layers.size(); ++i) {
    if (conv_slot_[i] < 0) continue;
    Conv3dParams<T>& p = convs_[conv_slot_[i]];
    const ConvGeometry& g = p.geometry;
    const double fan_in = static_cast<double>(g.in_channels) * g.kernel * g.kernel * g.kernel;
    double stddev = std::sqrt(2.0 / fan_in);
    if (static_cast<int>(i) == last) stddev *= output_scale;
    Rng rng(stream_seed(seed, spec_.layers[i].name));
    for (T& w : p.weight.data) w = static_cast<T>(rng.gaussian(0.0, stddev));
    std::fill(p.bias.data.begin(), p.bias.data.end(), T{0});
  }
}

template <typename T>
const Tensor<T>& Network<T>::forward(const Tensor<T>& input) {
  require_shape(input.shape, spec_.input_shape(), "network input");
  input_ = input;
  auto in = [&](std::size_t i, std::size_t k) -> const Tensor<T>& {
    const int id = input_ids_[i][k];
    return id < 0 ? input_ : acts_[id];
  };
  for (std::size_t i = 0; i < spec_.layers.size(); ++i) {
    const LayerSpec& l = spec_.layers[i];
    switch (l.type) {
      case LayerType::Conv:
        acts_[i] = conv3d_forward(in(i, 0), convs_[conv_slot_[i]]);
        break;
      case LayerType::Relu:
        acts_[i] = relu(in(i, 0));
        break;
      case LayerType::MaxPool: {
        PoolResult<T> r = pool3d_max(in(i, 0), l.window, l.stride);
        acts_[i] = std::move(r.output);
        argmax_[i] = std::move(r.argmax);
        break;
      }
      case LayerType::Add: {
        Tensor<T> acc = in(i, 0);
        for (std::size_t k = 1; k < l.inputs.size(); ++k) acc = add(acc, in(i, k));
        acts_[i] = std::move(acc);
        break;
      }
      case LayerType::Concat: {
        std::vector<const Tensor<T>*> parts;
        for (std::size_t k = 0; k < l.inputs.size(); ++k) parts.push_back(&in(i, k));
        acts_[i] = concat_channels(parts);
        break;
      }
    }
    check_finite(acts_[i], l.name.c_str());
  }
  forwarded_ = true;
  return acts_.back();
}

template <typename T>
void Network<T>::backward(const Tensor<T>& grad_output, bool need_input_grad) {
  if (!forwarded_) throw ValidationError("backward called before forward");
  require_shape(grad_output.shape, acts_.back().shape, "network grad_output");
  const std::size_t L = spec_.layers.size();
  std::vector<Tensor<T>> grads(L);
  grads[L - 1] = grad_output;
  input_grad_ = need_input_grad ? Tensor<T>(input_.shape) : Tensor<T>();

  // Layers whose gradient is needed: anything upstream of the output that
  // depends on a parameter or feeds the input gradient.
  auto accumulate = [&](int id, Tensor<T>&& g) {
    Tensor<T>& dst = id < 0 ? input_grad_ : grads[id];
    if (id < 0 && !need_input_grad) return;
    if (dst.data.empty()) {
      dst = std::move(g);
    } else {
      for (std::size_t k = 0; k < dst.data.size(); ++k) dst.data[k] += g.data[k];
    }
  };

  for (std::size_t ii = L; ii-- > 0;) {
    const LayerSpec& l = spec_.layers[ii];
    if (grads[ii].data.empty()) {
      if (l.type == LayerType::Conv) {
        Conv3dParams<T>& g = conv_grads_[conv_slot_[ii]];
        std::fill(g.weight.data.begin(), g.weight.data.end(), T{0});
        std::fill(g.bias.data.begin(), g.bias.data.end(), T{0});
      }
      continue;
    }
    Tensor<T> gout = std::move(grads[ii]);
    const auto& ids = input_ids_[ii];
    auto input_of = [&](std::size_t k) -> const Tensor<T>& {
      return ids[k] < 0 ? input_ : acts_[ids[k]];
    };
    switch (l.type) {
      case LayerType::Conv: {
        const bool want = ids[0] >= 0 || need_input_grad;
        ConvGrads<T> g = conv3d_backward(gout, input_of(0), convs_[conv_slot_[ii]], want);
        conv_grads_[conv_slot_[ii]].weight = std::move(g.weight);
        conv_grads_[conv_slot_[ii]].bias = std::move(g.bias);
        if (want) accumulate(ids[0], std::move(g.input));
        break;
      }
      case LayerType::Relu:
        accumulate(ids[0], relu_backward(gout, acts_[ii]));
        break;
      case LayerType::MaxPool:
        accumulate(ids[0], pool3d_max_backward(gout, argmax_[ii], input_of(0).shape));
        break;
      case LayerType::Add:
        for (std::size_t k = 0; k < ids.size(); ++k) {
          Tensor<T> copy = gout;
          accumulate(ids[k], std::move(copy));
        }
        break;
      case LayerType::Concat: {
        std::vector<int> channels;
        for (std::size_t k = 0; k < ids.size(); ++k) channels.push_back(input_of(k).shape.c());
        auto parts = split_channels(gout, channels);
        for (std::size_t k = 0; k < ids.size(); ++k) accumulate(ids[k], std::move(parts[k]));
        break;
      }
    }
  }
}

template <typename T>
const Tensor<T>& Network<T>::output() const {
  if (!forwarded_) throw ValidationError("network has not run forward");
  return acts_.back();
}

template <typename T>
const Tensor<T>& Network<T>::activation(const std::string& name) const {
  if (!forwarded_) throw ValidationError("network has not run forward");
  if (name == kInputName) return input_;
  return acts_[index_of(name)];
}

template <typename T>
Conv3dParams<T>& Network<T>::conv(const std::string& layer_name) {
  const int i = index_of(layer_name);
  if (conv_slot_[i] < 0) throw ValidationError("layer '" + layer_name + "' is not a conv");
  return convs_[conv_slot_[i]];
}

template <typename T>
std::vector<ParamRef<T>> Network<T>::parameters() {
  std::vector<ParamRef<T>> out;
  for (std::size_t i = 0; i < spec_.layers.size(); ++i) {
    if (conv_slot_[i] < 0) continue;
    const int s = conv_slot_[i];
    out.push_back({spec_.layers[i].name + ".weight", &convs_[s].weight, &conv_grads_[s].weight});
    out.push_back({spec_.layers[i].name + ".bias", &convs_[s].bias, &conv_grads_[s].bias});
  }
  return out;
}

template <typename T>
std::vector<NamedTensor<T>> Network<T>::state() const {
  std::vector<NamedTensor<T>> out;
  for (std::size_t i = 0; i < spec_.layers.size(); ++i) {
    if (conv_slot_[i] < 0) continue;
    const int s = conv_slot_[i];
    out.push_back({spec_.layers[i].name + ".weight", convs_[s].weight});
    out.push_back({spec_.layers[i].name + ".bias", convs_[s].bias});
  }
  return out;
}

template <typename T>
void Network<T>::load_state(const std::vector<NamedTensor<T>>& state) {
  auto refs = parameters();
  if (refs.size() != state.size()) {
    throw ValidationError("checkpoint holds " + std::to_string(state.size()) +
                          " tensors, network expects " + std::to_string(refs.size()));
  }
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (refs[i].name != state[i].name) {
      throw ValidationError("checkpoint tensor " + std::to_string(i) + ": expected '" +
                            refs[i].name + "', found '" + state[i].name + "'");
    }
    require_shape(state[i].value.shape, refs[i].value->shape, refs[i].name.c_str());
  }
  for (std::size_t i = 0; i < refs.size(); ++i) *refs[i].value = state[i].value;
}

template class Network<float>;
template class Network<double>;

}  // namespace voxsem::nn
