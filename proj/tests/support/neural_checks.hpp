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
#include <limits>
#include <vector>

#include "support/fixtures.hpp"
#include "voxsem/neural/conv.hpp"
#include "voxsem/neural/loss.hpp"
#include "voxsem/neural/network.hpp"
#include "voxsem/neural/ops.hpp"
#include "voxsem/neural/pool.hpp"

namespace voxsem::testing {

// Seven nested loops of textbook cross-correlation.
template <typename T>
nn::Tensor<T> naive_conv(const nn::Tensor<T>& in, const nn::Conv3dParams<T>& p) {
  const auto& g = p.geometry;
  nn::Tensor<T> out(g.output_shape(in.shape));
  for (int o = 0; o < g.out_channels; ++o) {
    for (int z = 0; z < out.shape.d(); ++z) {
      for (int y = 0; y < out.shape.h(); ++y) {
        for (int x = 0; x < out.shape.w(); ++x) {
          T acc = p.bias.data[o];
          for (int i = 0; i < g.in_channels; ++i) {
            for (int a = 0; a < g.kernel; ++a) {
              for (int b = 0; b < g.kernel; ++b) {
                for (int c = 0; c < g.kernel; ++c) {
                  const int zz = z * g.stride - g.padding + a * g.dilation;
                  const int yy = y * g.stride - g.padding + b * g.dilation;
                  const int xx = x * g.stride - g.padding + c * g.dilation;
                  if (zz < 0 || yy < 0 || xx < 0 || zz >= in.shape.d() || yy >= in.shape.h() ||
                      xx >= in.shape.w()) {
                    continue;
                  }
                  acc += p.weight.at(o, i, a, b, c) * in.at(0, i, zz, yy, xx);
                }
              }
            }
          }
          out.at(0, o, z, y, x) = acc;
        }
      }
    }
  }
  return out;
}

template <typename T>
nn::PoolResult<T> naive_pool(const nn::Tensor<T>& in, int window, int stride) {
  const auto ext = [&](int n) { return (n - window) / stride + 1; };
  nn::PoolResult<T> r;
  r.output = nn::Tensor<T>(
      nn::make_shape(1, in.shape.c(), ext(in.shape.d()), ext(in.shape.h()), ext(in.shape.w())));
  for (int c = 0; c < in.shape.c(); ++c) {
    for (int z = 0; z < r.output.shape.d(); ++z) {
      for (int y = 0; y < r.output.shape.h(); ++y) {
        for (int x = 0; x < r.output.shape.w(); ++x) {
          T best = -std::numeric_limits<T>::infinity();
          std::int64_t arg = -1;
          for (int a = 0; a < window; ++a) {
            for (int b = 0; b < window; ++b) {
              for (int e = 0; e < window; ++e) {
                const auto idx = in.index(0, c, z * stride + a, y * stride + b, x * stride + e);
                if (in.data[idx] > best) {
                  best = in.data[idx];
                  arg = idx;
                }
              }
            }
          }
          r.output.at(0, c, z, y, x) = best;
          r.argmax.push_back(arg);
        }
      }
    }
  }
  return r;
}

inline double naive_loss(const nn::Tensor<double>& logits, const std::vector<std::uint8_t>& labels,
                         const std::vector<std::uint8_t>& weights) {
  const int C = logits.shape.c();
  const auto S = logits.shape.spatial();
  double raw = 0.0;
  for (std::int64_t v = 0; v < S; ++v) {
    if (!weights[v]) continue;
    double mx = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < C; ++c) mx = std::max(mx, logits.data[c * S + v]);
    double sum = 0.0;
    for (int c = 0; c < C; ++c) sum += std::exp(logits.data[c * S + v] - mx);
    // Stable form log(sum) - (z_y - max); exact equality needs this evaluation order.
    raw += std::log(sum) - (logits.data[labels[v] * S + v] - mx);
  }
  return raw;
}

struct ConvCase {
  nn::Tensor<double> input;
  nn::Conv3dParams<double> params;
};

inline ConvCase random_conv_case(Rng& rng, bool integer_valued) {
  nn::ConvGeometry g;
  g.in_channels = rng.uniform_int(1, 2);
  g.out_channels = rng.uniform_int(1, 2);
  g.kernel = rng.uniform_int(0, 1) ? 3 : 1;
  g.stride = rng.uniform_int(1, 2);
  g.dilation = rng.uniform_int(1, 2);
  g.padding = rng.uniform_int(0, 2);
  const int lo = std::max(3, g.support() - 2 * g.padding);
  const auto extent = [&] { return rng.uniform_int(lo, lo + 2); };
  const auto in_shape = nn::make_shape(1, g.in_channels, extent(), extent(), extent());
  ConvCase c;
  c.params.geometry = g;
  if (integer_valued) {
    c.input = random_integer_tensor<double>(in_shape, rng, -4, 4);
    c.params.weight = random_integer_tensor<double>(g.weight_shape(), rng, -3, 3);
    c.params.bias = random_integer_tensor<double>(g.bias_shape(), rng, -2, 2);
  } else {
    c.input = random_tensor<double>(in_shape, rng);
    c.params.weight = random_tensor<double>(g.weight_shape(), rng);
    c.params.bias = random_tensor<double>(g.bias_shape(), rng);
  }
  return c;
}

// Tensor with entries spaced at least `gap` apart, so finite steps never reorder.
inline nn::Tensor<double> distinct_tensor(const nn::Shape& s, Rng& rng, double gap) {
  nn::Tensor<double> t(s);
  std::vector<double> vals(t.data.size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = gap * static_cast<double>(i);
  for (std::size_t i = vals.size(); i > 1; --i) std::swap(vals[i - 1], vals[rng.below(i)]);
  t.data = vals;
  return t;
}

// Entries bounded away from zero by `margin`.
inline nn::Tensor<double> off_zero_tensor(const nn::Shape& s, Rng& rng, double margin) {
  nn::Tensor<double> t = random_tensor<double>(s, rng);
  for (auto& v : t.data) v = v < 0 ? v - margin : v + margin;
  return t;
}

struct CheckResult {
  bool forward_exact = true;
  double max_relative_error = 0.0;
  void merge(double err) { max_relative_error = std::max(max_relative_error, err); }
};

inline CheckResult check_conv(Rng& rng, int cases) {
  CheckResult r;
  for (int n = 0; n < cases; ++n) {
    const auto ic = random_conv_case(rng, true);
    r.forward_exact &= nn::conv3d_forward(ic.input, ic.params).data ==
                       naive_conv(ic.input, ic.params).data;

    auto c = random_conv_case(rng, false);
    const auto probe = random_tensor<double>(c.params.geometry.output_shape(c.input.shape), rng);
    const auto f = [&] { return dot(nn::conv3d_forward(c.input, c.params), probe); };
    const auto grads = nn::conv3d_backward(probe, c.input, c.params);
    r.merge(relative_error(grads.input.data, numeric_gradient(c.input, f)));
    r.merge(relative_error(grads.weight.data, numeric_gradient(c.params.weight, f)));
    r.merge(relative_error(grads.bias.data, numeric_gradient(c.params.bias, f)));
  }
  return r;
}

inline CheckResult check_pool(Rng& rng, int cases) {
  CheckResult r;
  for (int n = 0; n < cases; ++n) {
    const int window = rng.uniform_int(1, 3);
    const int stride = rng.uniform_int(1, 2);
    const auto shape = nn::make_shape(1, rng.uniform_int(1, 2), rng.uniform_int(window, 5),
                                      rng.uniform_int(window, 5), rng.uniform_int(window, 5));
    auto x = distinct_tensor(shape, rng, 0.01);
    const auto got = nn::pool3d_max(x, window, stride);
    const auto want = naive_pool(x, window, stride);
    r.forward_exact &= got.output.data == want.output.data && got.argmax == want.argmax;
    const auto probe = random_tensor<double>(got.output.shape, rng);
    const auto f = [&] { return dot(nn::pool3d_max(x, window, stride).output, probe); };
    const auto g = nn::pool3d_max_backward(probe, got.argmax, x.shape);
    r.merge(relative_error(g.data, numeric_gradient(x, f)));
  }
  return r;
}

inline CheckResult check_relu(Rng& rng, int cases) {
  CheckResult r;
  for (int n = 0; n < cases; ++n) {
    const auto shape = nn::make_shape(1, 2, 3, 4, 5);
    auto x = off_zero_tensor(shape, rng, 0.01);
    const auto y = nn::relu(x);
    for (std::size_t i = 0; i < x.data.size(); ++i) {
      r.forward_exact &= y.data[i] == (x.data[i] > 0 ? x.data[i] : 0.0);
    }
    const auto probe = random_tensor<double>(shape, rng);
    const auto f = [&] { return dot(nn::relu(x), probe); };
    r.merge(relative_error(nn::relu_backward(probe, y).data, numeric_gradient(x, f)));
  }
  return r;
}

inline CheckResult check_concat(Rng& rng, int cases) {
  CheckResult r;
  for (int n = 0; n < cases; ++n) {
    const int ca = rng.uniform_int(1, 3), cb = rng.uniform_int(1, 3);
    auto a = random_tensor<double>(nn::make_shape(1, ca, 2, 3, 4), rng);
    auto b = random_tensor<double>(nn::make_shape(1, cb, 2, 3, 4), rng);
    const auto y = nn::concat_channels<double>({&a, &b});
    for (int c = 0; c < ca + cb; ++c) {
      for (std::int64_t v = 0; v < a.shape.spatial(); ++v) {
        const double want = c < ca ? a.channel(0, c)[v] : b.channel(0, c - ca)[v];
        r.forward_exact &= y.channel(0, c)[v] == want;
      }
    }
    const auto probe = random_tensor<double>(y.shape, rng);
    const auto f = [&] { return dot(nn::concat_channels<double>({&a, &b}), probe); };
    const auto parts = nn::split_channels(probe, {ca, cb});
    r.merge(relative_error(parts[0].data, numeric_gradient(a, f)));
    r.merge(relative_error(parts[1].data, numeric_gradient(b, f)));
  }
  return r;
}

inline CheckResult check_add(Rng& rng, int cases) {
  CheckResult r;
  for (int n = 0; n < cases; ++n) {
    const auto shape = nn::make_shape(1, rng.uniform_int(1, 3), 3, 3, 4);
    auto a = random_tensor<double>(shape, rng);
    auto b = random_tensor<double>(shape, rng);
    const auto y = nn::add(a, b);
    for (std::size_t i = 0; i < y.data.size(); ++i) {
      r.forward_exact &= y.data[i] == a.data[i] + b.data[i];
    }
    const auto probe = random_tensor<double>(shape, rng);
    const auto f = [&] { return dot(nn::add(a, b), probe); };
    // Backward duplicates the incoming gradient to both operands.
    r.merge(relative_error(probe.data, numeric_gradient(a, f)));
    r.merge(relative_error(probe.data, numeric_gradient(b, f)));
  }
  return r;
}

inline CheckResult check_loss(Rng& rng, int cases) {
  CheckResult r;
  for (int n = 0; n < cases; ++n) {
    const int classes = rng.uniform_int(2, 12);
    auto logits = random_tensor<double>(nn::make_shape(1, classes, 2, 3, 3), rng, -2.0, 2.0);
    const auto S = logits.shape.spatial();
    std::vector<std::uint8_t> labels(S), weights(S);
    for (std::int64_t v = 0; v < S; ++v) {
      labels[v] = static_cast<std::uint8_t>(rng.below(classes));
      weights[v] = static_cast<std::uint8_t>(rng.below(2));
    }
    const auto out = nn::weighted_softmax_loss(logits, labels, weights);
    r.forward_exact &= out.raw == naive_loss(logits, labels, weights);
    const auto f = [&] { return nn::weighted_softmax_loss(logits, labels, weights).raw; };
    r.merge(relative_error(out.grad.data, numeric_gradient(logits, f)));
  }
  return r;
}

// conv -> relu -> conv, with an additive shortcut from the relu.
inline nn::NetworkSpec composite_spec() {
  nn::NetworkSpec s;
  s.input_channels = 2;
  s.input_dims = {5, 4, 4};
  nn::LayerSpec c1{"c1", nn::LayerType::Conv, {nn::kInputName}, 3, 3, 1, 1, 1};
  nn::LayerSpec r1{"r1", nn::LayerType::Relu, {"c1"}};
  nn::LayerSpec c2{"c2", nn::LayerType::Conv, {"r1"}, 3, 3, 1, 2, 2};
  nn::LayerSpec sum{"sum", nn::LayerType::Add, {"r1", "c2"}};
  s.layers = {c1, r1, c2, sum};
  return s;
}

inline CheckResult check_composite(Rng& rng, int cases) {
  CheckResult r;
  for (int n = 0; n < cases; ++n) {
    nn::Network<double> net(composite_spec());
    net.init(rng.next(), 1.0);
    auto x = random_tensor<double>(net.spec().input_shape(), rng);
    // Each c1 bias puts the relu kink mid-way across the widest gap of its channel's pre-activations.
    net.forward(x);
    auto& c1 = net.conv("c1");
    const auto& pre = net.activation("c1");
    const std::int64_t m = pre.shape.spatial();
    for (int c = 0; c < pre.shape.c(); ++c) {
      std::vector<double> v(pre.channel(0, c), pre.channel(0, c) + m);
      for (double& e : v) e -= c1.bias.data[c];
      std::sort(v.begin(), v.end());
      std::int64_t best = m / 10;
      for (std::int64_t i = m / 10; i + 1 < m - m / 10; ++i) {
        if (v[i + 1] - v[i] > v[best + 1] - v[best]) best = i;
      }
      c1.bias.data[c] = -0.5 * (v[best] + v[best + 1]);
    }
    const auto probe = random_tensor<double>(net.output().shape, rng);
    const auto f = [&] { return dot(net.forward(x), probe); };
    net.forward(x);
    net.backward(probe, true);
    const auto analytic_input = net.input_grad().data;
    std::vector<std::vector<double>> analytic_params;
    for (const auto& p : net.parameters()) analytic_params.push_back(p.grad->data);
    r.merge(relative_error(analytic_input, numeric_gradient(x, f)));
    auto params = net.parameters();
    for (std::size_t i = 0; i < params.size(); ++i) {
      r.merge(relative_error(analytic_params[i], numeric_gradient(*params[i].value, f)));
    }
  }
  return r;
}

}  // namespace voxsem::testing
