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

#include "voxsem/neural/sgd.hpp"

#include <algorithm>

#include "voxsem/common/error.hpp"

namespace voxsem::nn {

void SgdConfig::validate() const {
  if (!(lr > 0.0)) throw ValidationError("learning rate must be positive");
  if (momentum < 0.0 || momentum >= 1.0) throw ValidationError("momentum must lie in [0, 1)");
  if (accumulation_k < 1) throw ValidationError("accumulation_k must be >= 1");
}

template <typename T>
Sgd<T>::Sgd(const SgdConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
}

template <typename T>
bool Sgd<T>::step(const std::vector<Tensor<T>*>& params,
                  const std::vector<const Tensor<T>*>& grads) {
  if (params.size() != grads.size()) throw ValidationError("sgd: params/grads count mismatch");
  if (accum_.empty()) {
    for (const Tensor<T>* p : params) {
      accum_.emplace_back(p->data.size(), 0.0);
      velocity_.emplace_back(p->data.size(), 0.0);
    }
  }
  if (accum_.size() != params.size()) throw ValidationError("sgd: parameter set changed");
  for (std::size_t i = 0; i < params.size(); ++i) {
    require_shape(grads[i]->shape, params[i]->shape, "sgd gradient");
    if (accum_[i].size() != params[i]->data.size()) throw ValidationError("sgd: parameter resized");
    for (std::size_t j = 0; j < accum_[i].size(); ++j) accum_[i][j] += grads[i]->data[j];
  }
  if (++pending_ < cfg_.accumulation_k) return false;
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto& v = velocity_[i];
    auto& a = accum_[i];
    auto& theta = params[i]->data;
    for (std::size_t j = 0; j < v.size(); ++j) {
      v[j] = cfg_.momentum * v[j] + a[j];
      theta[j] = static_cast<T>(static_cast<double>(theta[j]) - cfg_.lr * v[j]);
    }
    std::fill(a.begin(), a.end(), 0.0);
  }
  pending_ = 0;
  return true;
}

template class Sgd<float>;
template class Sgd<double>;

}  // namespace voxsem::nn
