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

#include "voxsem/neural/conv.hpp"

#include <algorithm>
#include <string>

#include <Eigen/Core>

#include "voxsem/common/error.hpp"

namespace voxsem::nn {

namespace {

template <typename T>
using RowMat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using RowMap = Eigen::Map<RowMat<T>, 0, Eigen::OuterStride<>>;
template <typename T>
using ConstRowMap = Eigen::Map<const RowMat<T>, 0, Eigen::OuterStride<>>;

// Upper bound on im2col elements per chunk.
constexpr std::int64_t kColBudget = std::int64_t{1} << 22;

bool is_pointwise(const ConvGeometry& g) {
  return g.kernel == 1 && g.stride == 1 && g.padding == 0;
}

struct Plan {
  int od, oh, ow;
  int id, ih, iw;
  std::int64_t rows;   // C * k^3
  std::int64_t plane;  // oh * ow
  int slab;            // output z-slices per chunk
};

Plan make_plan(const ConvGeometry& g, const Shape& in) {
  Plan p;
  p.id = in.d();
  p.ih = in.h();
  p.iw = in.w();
  p.od = g.out_extent(p.id);
  p.oh = g.out_extent(p.ih);
  p.ow = g.out_extent(p.iw);
  p.rows = static_cast<std::int64_t>(g.in_channels) * g.kernel * g.kernel * g.kernel;
  p.plane = static_cast<std::int64_t>(p.oh) * p.ow;
  p.slab = static_cast<int>(std::clamp<std::int64_t>(kColBudget / std::max<std::int64_t>(1, p.rows * p.plane), 1, p.od));
  return p;
}

// Valid output range [lo, hi) along one axis for kernel offset `off`.
void valid_range(int out_extent, int in_extent, int stride, int off, int& lo, int& hi) {
  // in = o * stride + off must satisfy 0 <= in < in_extent.
  lo = off >= 0 ? 0 : (-off + stride - 1) / stride;
  hi = in_extent - off <= 0 ? 0 : (in_extent - off - 1) / stride + 1;
  hi = std::min(hi, out_extent);
  lo = std::min(lo, hi);
}

template <typename T>
void im2col(const T* in, const ConvGeometry& g, const Plan& p, int z0, int nz, T* col) {
  const std::int64_t width = static_cast<std::int64_t>(nz) * p.plane;
  const int k = g.kernel;
  std::int64_t r = 0;
  for (int c = 0; c < g.in_channels; ++c) {
    const T* src = in + static_cast<std::int64_t>(c) * p.id * p.ih * p.iw;
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        for (int e = 0; e < k; ++e, ++r) {
          T* dst = col + r * width;
          const int offx = e * g.dilation - g.padding;
          const int offy = b * g.dilation - g.padding;
          const int offz = a * g.dilation - g.padding;
          int xlo, xhi;
          valid_range(p.ow, p.iw, g.stride, offx, xlo, xhi);
          for (int z = 0; z < nz; ++z) {
            const int iz = (z0 + z) * g.stride + offz;
            for (int y = 0; y < p.oh; ++y) {
              T* row = dst + (static_cast<std::int64_t>(z) * p.oh + y) * p.ow;
              const int iy = y * g.stride + offy;
              if (iz < 0 || iz >= p.id || iy < 0 || iy >= p.ih) {
                std::fill(row, row + p.ow, T{0});
                continue;
              }
              const T* line = src + (static_cast<std::int64_t>(iz) * p.ih + iy) * p.iw;
              std::fill(row, row + xlo, T{0});
              if (g.stride == 1) {
                std::copy(line + xlo + offx, line + xhi + offx, row + xlo);
              } else {
                for (int x = xlo; x < xhi; ++x) row[x] = line[x * g.stride + offx];
              }
              std::fill(row + xhi, row + p.ow, T{0});
            }
          }
        }
      }
    }
  }
}

template <typename T>
void col2im(const T* col, const ConvGeometry& g, const Plan& p, int z0, int nz, T* in) {
  const std::int64_t width = static_cast<std::int64_t>(nz) * p.plane;
  const int k = g.kernel;
  std::int64_t r = 0;
  for (int c = 0; c < g.in_channels; ++c) {
    T* dst = in + static_cast<std::int64_t>(c) * p.id * p.ih * p.iw;
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        for (int e = 0; e < k; ++e, ++r) {
          const T* src = col + r * width;
          const int offx = e * g.dilation - g.padding;
          const int offy = b * g.dilation - g.padding;
          const int offz = a * g.dilation - g.padding;
          int xlo, xhi;
          valid_range(p.ow, p.iw, g.stride, offx, xlo, xhi);
          for (int z = 0; z < nz; ++z) {
            const int iz = (z0 + z) * g.stride + offz;
            if (iz < 0 || iz >= p.id) continue;
            for (int y = 0; y < p.oh; ++y) {
              const int iy = y * g.stride + offy;
              if (iy < 0 || iy >= p.ih) continue;
              const T* row = src + (static_cast<std::int64_t>(z) * p.oh + y) * p.ow;
              T* line = dst + (static_cast<std::int64_t>(iz) * p.ih + iy) * p.iw;
              for (int x = xlo; x < xhi; ++x) line[x * g.stride + offx] += row[x];
            }
          }
        }
      }
    }
  }
}

template <typename T>
void check_params(const Tensor<T>& input, const Conv3dParams<T>& p) {
  p.geometry.validate();
  if (input.shape.c() != p.geometry.in_channels) {
    throw ValidationError("conv3d: expected " + std::to_string(p.geometry.in_channels) +
                          " input channels, found " + std::to_string(input.shape.c()) +
                          " in " + input.shape.str());
  }
  require_shape(p.weight.shape, p.geometry.weight_shape(), "conv3d weight");
  require_shape(p.bias.shape, p.geometry.bias_shape(), "conv3d bias");
}

}  // namespace

void ConvGeometry::validate() const {
  if (kernel < 1 || kernel % 2 == 0) throw ValidationError("conv kernel must be odd and >= 1");
  if (stride < 1) throw ValidationError("conv stride must be >= 1");
  if (dilation < 1) throw ValidationError("conv dilation must be >= 1");
  if (padding < 0) throw ValidationError("conv padding must be >= 0");
  if (in_channels < 1 || out_channels < 1) throw ValidationError("conv channels must be >= 1");
}

int ConvGeometry::out_extent(int in) const {
  const int span = in + 2 * padding - support();
  if (span < 0) {
    throw ValidationError("conv: input extent " + std::to_string(in) +
                          " too small for support " + std::to_string(support()) +
                          " with padding " + std::to_string(padding));
  }
  return span / stride + 1;
}

Shape ConvGeometry::output_shape(const Shape& input) const {
  return make_shape(input.n(), out_channels, out_extent(input.d()), out_extent(input.h()),
                    out_extent(input.w()));
}

template <typename T>
Tensor<T> conv3d_forward(const Tensor<T>& input, const Conv3dParams<T>& p) {
  check_params(input, p);
  const ConvGeometry& g = p.geometry;
  Tensor<T> out(g.output_shape(input.shape));
  const Plan plan = make_plan(g, input.shape);
  const std::int64_t out_spatial = out.shape.spatial();
  const std::int64_t in_spatial = input.shape.spatial();
  ConstRowMap<T> w(p.weight.data.data(), g.out_channels, plan.rows, Eigen::OuterStride<>(plan.rows));
  std::vector<T> col;
  for (int n = 0; n < input.shape.n(); ++n) {
    T* dst = out.channel(n, 0);
    for (int o = 0; o < g.out_channels; ++o) {
      std::fill(dst + o * out_spatial, dst + (o + 1) * out_spatial, p.bias.data[o]);
    }
    if (is_pointwise(g)) {
      ConstRowMap<T> x(input.channel(n, 0), g.in_channels, in_spatial, Eigen::OuterStride<>(in_spatial));
      RowMap<T> y(dst, g.out_channels, out_spatial, Eigen::OuterStride<>(out_spatial));
      y.noalias() += w * x;
      continue;
    }
    for (int z0 = 0; z0 < plan.od; z0 += plan.slab) {
      const int nz = std::min(plan.slab, plan.od - z0);
      const std::int64_t width = nz * plan.plane;
      col.resize(static_cast<std::size_t>(plan.rows * width));
      im2col(input.channel(n, 0), g, plan, z0, nz, col.data());
      ConstRowMap<T> x(col.data(), plan.rows, width, Eigen::OuterStride<>(width));
      RowMap<T> y(dst + z0 * plan.plane, g.out_channels, width, Eigen::OuterStride<>(out_spatial));
      y.noalias() += w * x;
    }
  }
  return out;
}

template <typename T>
ConvGrads<T> conv3d_backward(const Tensor<T>& grad_output, const Tensor<T>& input,
                             const Conv3dParams<T>& p, bool need_input_grad) {
  check_params(input, p);
  const ConvGeometry& g = p.geometry;
  require_shape(grad_output.shape, g.output_shape(input.shape), "conv3d grad_output");
  const Plan plan = make_plan(g, input.shape);
  const std::int64_t out_spatial = grad_output.shape.spatial();
  const std::int64_t in_spatial = input.shape.spatial();

  ConvGrads<T> grads;
  grads.weight = Tensor<T>(p.weight.shape);
  grads.bias = Tensor<T>(p.bias.shape);
  if (need_input_grad) grads.input = Tensor<T>(input.shape);

  ConstRowMap<T> w(p.weight.data.data(), g.out_channels, plan.rows, Eigen::OuterStride<>(plan.rows));
  RowMap<T> gw(grads.weight.data.data(), g.out_channels, plan.rows, Eigen::OuterStride<>(plan.rows));
  std::vector<T> col;
  std::vector<T> gcol;
  for (int n = 0; n < input.shape.n(); ++n) {
    const T* go = grad_output.channel(n, 0);
    for (int o = 0; o < g.out_channels; ++o) {
      T s{0};
      for (std::int64_t i = 0; i < out_spatial; ++i) s += go[o * out_spatial + i];
      grads.bias.data[o] += s;
    }
    if (is_pointwise(g)) {
      ConstRowMap<T> x(input.channel(n, 0), g.in_channels, in_spatial, Eigen::OuterStride<>(in_spatial));
      ConstRowMap<T> dy(go, g.out_channels, out_spatial, Eigen::OuterStride<>(out_spatial));
      gw.noalias() += dy * x.transpose();
      if (need_input_grad) {
        RowMap<T> dx(grads.input.channel(n, 0), g.in_channels, in_spatial, Eigen::OuterStride<>(in_spatial));
        dx.noalias() += w.transpose() * dy;
      }
      continue;
    }
    for (int z0 = 0; z0 < plan.od; z0 += plan.slab) {
      const int nz = std::min(plan.slab, plan.od - z0);
      const std::int64_t width = nz * plan.plane;
      col.resize(static_cast<std::size_t>(plan.rows * width));
      im2col(input.channel(n, 0), g, plan, z0, nz, col.data());
      ConstRowMap<T> x(col.data(), plan.rows, width, Eigen::OuterStride<>(width));
      ConstRowMap<T> dy(go + z0 * plan.plane, g.out_channels, width, Eigen::OuterStride<>(out_spatial));
      gw.noalias() += dy * x.transpose();
      if (need_input_grad) {
        gcol.resize(col.size());
        RowMap<T> dcol(gcol.data(), plan.rows, width, Eigen::OuterStride<>(width));
        dcol.noalias() = w.transpose() * dy;
        col2im(gcol.data(), g, plan, z0, nz, grads.input.channel(n, 0));
      }
    }
  }
  return grads;
}

template Tensor<float> conv3d_forward(const Tensor<float>&, const Conv3dParams<float>&);
template Tensor<double> conv3d_forward(const Tensor<double>&, const Conv3dParams<double>&);
template ConvGrads<float> conv3d_backward(const Tensor<float>&, const Tensor<float>&,
                                          const Conv3dParams<float>&, bool);
template ConvGrads<double> conv3d_backward(const Tensor<double>&, const Tensor<double>&,
                                           const Conv3dParams<double>&, bool);

}  // namespace voxsem::nn
