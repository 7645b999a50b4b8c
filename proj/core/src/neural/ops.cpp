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

#include "voxsem/neural/ops.hpp"

#include <algorithm>
#include <string>

#include "voxsem/common/error.hpp"

namespace voxsem::nn {

template <typename T>
Tensor<T> relu(const Tensor<T>& x) {
  Tensor<T> y(x.shape);
  for (std::size_t i = 0; i < x.data.size(); ++i) y.data[i] = x.data[i] > T{0} ? x.data[i] : T{0};
  return y;
}

template <typename T>
Tensor<T> relu_backward(const Tensor<T>& grad_output, const Tensor<T>& output) {
  require_shape(grad_output.shape, output.shape, "relu backward");
  Tensor<T> g(output.shape);
  for (std::size_t i = 0; i < g.data.size(); ++i) {
    g.data[i] = output.data[i] > T{0} ? grad_output.data[i] : T{0};
  }
  return g;
}

template <typename T>
Tensor<T> concat_channels(const std::vector<const Tensor<T>*>& inputs) {
  if (inputs.empty()) throw ValidationError("concat needs at least one input");
  Shape s = inputs.front()->shape;
  int total = 0;
  for (const Tensor<T>* t : inputs) {
    Shape probe = t->shape;
    probe.dims[1] = s.c();
    require_shape(probe, s, "concat input");
    total += t->shape.c();
  }
  s.dims[1] = total;
  Tensor<T> out(s);
  const std::int64_t spatial = s.spatial();
  for (int n = 0; n < s.n(); ++n) {
    int c0 = 0;
    for (const Tensor<T>* t : inputs) {
      const std::int64_t len = t->shape.c() * spatial;
      std::copy(t->channel(n, 0), t->channel(n, 0) + len, out.channel(n, c0));
      c0 += t->shape.c();
    }
  }
  return out;
}

template <typename T>
std::vector<Tensor<T>> split_channels(const Tensor<T>& grad_output,
                                      const std::vector<int>& channels) {
  int total = 0;
  for (int c : channels) total += c;
  if (total != grad_output.shape.c()) {
    throw ValidationError("split: channel counts sum to " + std::to_string(total) +
                          ", tensor has " + std::to_string(grad_output.shape.c()));
  }
  const Shape& s = grad_output.shape;
  const std::int64_t spatial = s.spatial();
  std::vector<Tensor<T>> out;
  int c0 = 0;
  for (int c : channels) {
    Tensor<T> t(make_shape(s.n(), c, s.d(), s.h(), s.w()));
    for (int n = 0; n < s.n(); ++n) {
      const T* src = grad_output.channel(n, c0);
      std::copy(src, src + c * spatial, t.channel(n, 0));
    }
    out.push_back(std::move(t));
    c0 += c;
  }
  return out;
}

template <typename T>
Tensor<T> add(const Tensor<T>& a, const Tensor<T>& b) {
  require_shape(b.shape, a.shape, "add operand");
  Tensor<T> out(a.shape);
  for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] + b.data[i];
  return out;
}

#define VOXSEM_OPS_INSTANTIATE(T)                                                     \
  template Tensor<T> relu(const Tensor<T>&);                                          \
  template Tensor<T> relu_backward(const Tensor<T>&, const Tensor<T>&);               \
  template Tensor<T> concat_channels(const std::vector<const Tensor<T>*>&);           \
  template std::vector<Tensor<T>> split_channels(const Tensor<T>&, const std::vector<int>&); \
  template Tensor<T> add(const Tensor<T>&, const Tensor<T>&);

VOXSEM_OPS_INSTANTIATE(float)
VOXSEM_OPS_INSTANTIATE(double)

}  // namespace voxsem::nn
