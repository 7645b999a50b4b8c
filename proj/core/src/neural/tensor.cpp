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

#include "voxsem/neural/tensor.hpp"

#include <cmath>

#include "voxsem/common/error.hpp"

namespace voxsem::nn {

std::string Shape::str() const {
  std::string s = "(";
  for (int i = 0; i < 5; ++i) {
    if (i) s += ", ";
    s += std::to_string(dims[i]);
  }
  return s + ")";
}

Shape make_shape(int n, int c, int d, int h, int w) {
  if (n < 0 || c < 0 || d < 0 || h < 0 || w < 0) {
    throw ValidationError("tensor dims must be non-negative");
  }
  return Shape{{n, c, d, h, w}};
}

void require_shape(const Shape& actual, const Shape& expected, const char* what) {
  if (!(actual == expected)) {
    throw ValidationError(std::string(what) + ": expected shape " + expected.str() +
                          ", found " + actual.str());
  }
}

template <typename T>
void check_finite(const Tensor<T>& t, const char* what) {
  for (T v : t.data) {
    if (!std::isfinite(v)) throw NumericalError(std::string(what) + ": non-finite value");
  }
}

template void check_finite(const Tensor<float>&, const char*);
template void check_finite(const Tensor<double>&, const char*);

}  // namespace voxsem::nn
