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

#include "voxsem/neural/pool.hpp"

#include <string>

#include "voxsem/common/error.hpp"

namespace voxsem::nn {

template <typename T>
PoolResult<T> pool3d_max(const Tensor<T>& input, int window, int stride) {
  if (window < 1 || stride < 1) throw ValidationError("pool window and stride must be >= 1");
  const Shape& s = input.shape;
  if (window > s.d() || window > s.h() || window > s.w()) {
    throw ValidationError("pool window " + std::to_string(window) + " exceeds input " + s.str());
  }
  const int od = (s.d() - window) / stride + 1;
  const int oh = (s.h() - window) / stride + 1;
  const int ow = (s.w() - window) / stride + 1;
  PoolResult<T> r{Tensor<T>(make_shape(s.n(), s.c(), od, oh, ow)), {}};
  r.argmax.resize(static_cast<std::size_t>(r.output.size()));
  std::int64_t o = 0;
  for (int n = 0; n < s.n(); ++n) {
    for (int c = 0; c < s.c(); ++c) {
      for (int z = 0; z < od; ++z) {
        for (int y = 0; y < oh; ++y) {
          for (int x = 0; x < ow; ++x, ++o) {
            std::int64_t best = input.index(n, c, z * stride, y * stride, x * stride);
            T best_v = input.data[best];
            for (int a = 0; a < window; ++a) {
              for (int b = 0; b < window; ++b) {
                const std::int64_t base =
                    input.index(n, c, z * stride + a, y * stride + b, x * stride);
                for (int e = 0; e < window; ++e) {
                  if (input.data[base + e] > best_v) {
                    best_v = input.data[base + e];
                    best = base + e;
                  }
                }
              }
            }
            r.output.data[o] = best_v;
            r.argmax[o] = best;
          }
        }
      }
    }
  }
  return r;
}

template <typename T>
Tensor<T> pool3d_max_backward(const Tensor<T>& grad_output,
                              const std::vector<std::int64_t>& argmax,
                              const Shape& input_shape) {
  if (static_cast<std::int64_t>(argmax.size()) != grad_output.size()) {
    throw ValidationError("pool backward: argmax size does not match grad_output " +
                          grad_output.shape.str());
  }
  Tensor<T> g(input_shape);
  for (std::size_t i = 0; i < argmax.size(); ++i) {
    if (argmax[i] < 0 || argmax[i] >= g.size()) {
      throw ValidationError("pool backward: argmax index out of range");
    }
    g.data[argmax[i]] += grad_output.data[i];
  }
  return g;
}

template PoolResult<float> pool3d_max(const Tensor<float>&, int, int);
template PoolResult<double> pool3d_max(const Tensor<double>&, int, int);
template Tensor<float> pool3d_max_backward(const Tensor<float>&, const std::vector<std::int64_t>&,
                                           const Shape&);
template Tensor<double> pool3d_max_backward(const Tensor<double>&,
                                            const std::vector<std::int64_t>&, const Shape&);

}  // namespace voxsem::nn
