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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace voxsem::nn {

/// (n, c, d, h, w) with w fastest. Grid axes map as w = x, h = y, d = z.
struct Shape {
  std::array<int, 5> dims{0, 0, 0, 0, 0};

  int n() const { return dims[0]; }
  int c() const { return dims[1]; }
  int d() const { return dims[2]; }
  int h() const { return dims[3]; }
  int w() const { return dims[4]; }
  std::int64_t spatial() const {
    return static_cast<std::int64_t>(dims[2]) * dims[3] * dims[4];
  }
  std::int64_t count() const {
    return static_cast<std::int64_t>(dims[0]) * dims[1] * spatial();
  }
  bool operator==(const Shape&) const = default;
  std::string str() const;
};

Shape make_shape(int n, int c, int d, int h, int w);

/// Throws ValidationError with both shapes when they differ.
void require_shape(const Shape& actual, const Shape& expected, const char* what);

template <typename T>
struct Tensor {
  Shape shape;
  std::vector<T> data;

  Tensor() = default;
  explicit Tensor(const Shape& s, T fill = T{0})
      : shape(s), data(static_cast<std::size_t>(s.count()), fill) {}

  std::int64_t size() const { return static_cast<std::int64_t>(data.size()); }
  std::int64_t index(int n, int c, int z, int y, int x) const {
    return (((static_cast<std::int64_t>(n) * shape.c() + c) * shape.d() + z) * shape.h() + y) *
               shape.w() +
           x;
  }
  T& at(int n, int c, int z, int y, int x) { return data[index(n, c, z, y, x)]; }
  const T& at(int n, int c, int z, int y, int x) const { return data[index(n, c, z, y, x)]; }
  T* channel(int n, int c) { return data.data() + index(n, c, 0, 0, 0); }
  const T* channel(int n, int c) const { return data.data() + index(n, c, 0, 0, 0); }
  bool consistent() const { return size() == shape.count(); }
};

/// Throws NumericalError naming `what` if any value is NaN or Inf.
template <typename T>
void check_finite(const Tensor<T>& t, const char* what);

template <typename To, typename From>
Tensor<To> tensor_cast(const Tensor<From>& t) {
  Tensor<To> out(t.shape);
  for (std::size_t i = 0; i < t.data.size(); ++i) out.data[i] = static_cast<To>(t.data[i]);
  return out;
}

}  // namespace voxsem::nn
