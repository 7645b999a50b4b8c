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

#include "voxsem/ssc/train.hpp"

#include <cstdio>
#include <numeric>

#include "voxsem/common/error.hpp"
#include "voxsem/common/rng.hpp"
#include "voxsem/neural/loss.hpp"

namespace voxsem::ssc {

void TrainConfig::validate() const {
  sgd().validate();
  if (iterations < 1) throw ValidationError("iterations must be >= 1");
  if (!(output_init_scale > 0.0)) throw ValidationError("output init scale must be positive");
}

TrainResult train(nn::Network<float>& net, const std::vector<TrainingSample>& data,
                  const TrainConfig& cfg,
                  const std::function<void(const LossRecord&)>& progress) {
  cfg.validate();
  if (data.empty()) throw ValidationError("training set is empty");
  for (const auto& s : data) {
    nn::require_shape(s.input.shape, net.spec().input_shape(), "training input");
  }
  net.init(stream_seed(cfg.seed, "init"), cfg.output_init_scale);
  nn::Sgd<float> sgd(cfg.sgd());
  auto params = net.parameters();
  std::vector<nn::Tensor<float>*> values;
  std::vector<const nn::Tensor<float>*> grads;
  for (auto& p : params) {
    values.push_back(p.value);
    grads.push_back(p.grad);
  }

  TrainResult result;
  std::vector<std::size_t> order(data.size());
  std::size_t cursor = order.size();
  int epoch = 0;
  for (int it = 0; it < cfg.iterations; ++it) {
    if (cursor == order.size()) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      Rng rng(stream_seed(cfg.seed, "order", static_cast<std::uint64_t>(epoch++)));
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
      cursor = 0;
    }
    const TrainingSample& s = data[order[cursor++]];
    const BalancedWeights w =
        balance_sample(s.labels, s.states, stream_seed(cfg.seed, "sampler", static_cast<std::uint64_t>(it)));
    const nn::Tensor<float>& logits = net.forward(s.input);
    nn::LossOutput<float> loss = nn::weighted_softmax_loss(logits, s.labels.data, w.weights.data);
    if (loss.weighted_voxels > 0) {
      const float scale = 1.0f / static_cast<float>(loss.weighted_voxels);
      for (float& g : loss.grad.data) g *= scale;
    }
    net.backward(loss.grad);
    sgd.step(values, grads);
    const LossRecord rec{it, loss.raw, loss.mean};
    result.losses.push_back(rec);
    if (progress) progress(rec);
  }
  return result;
}

std::string loss_csv(const TrainResult& r) {
  std::string out = "iteration,raw_loss,mean_loss\n";
  char buf[96];
  for (const auto& l : r.losses) {
    std::snprintf(buf, sizeof(buf), "%d,%.9g,%.9g\n", l.iteration, l.raw, l.mean);
    out += buf;
  }
  return out;
}

}  // namespace voxsem::ssc
