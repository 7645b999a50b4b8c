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
#include <functional>
#include <string>
#include <vector>

#include "voxsem/neural/network.hpp"
#include "voxsem/neural/sgd.hpp"
#include "voxsem/ssc/dataset.hpp"

namespace voxsem::ssc {

struct TrainConfig {
  double lr = 0.01;
  double momentum = 0.9;
  int accumulation_k = 4;
  int iterations = 2000;
  std::uint64_t seed = 0;
  std::string manifest;
  /// Output-layer init deviation relative to He.
  double output_init_scale = 1e-2;

  void validate() const;
  nn::SgdConfig sgd() const { return {lr, momentum, accumulation_k}; }
};

struct LossRecord {
  int iteration = 0;
  /// Sum of weighted voxel losses.
  double raw = 0.0;
  /// raw over the number of weighted voxels.
  double mean = 0.0;
};

struct TrainResult {
  std::vector<LossRecord> losses;
};

/// Initializes `net` from the seed, then per iteration takes the next sample
/// of a per-epoch seeded shuffle, redraws its balanced weights, and runs
/// forward, loss, backward and an accumulating SGD step. The gradient fed to
/// the optimizer is that of the mean loss. Bit-identical per seed.
TrainResult train(nn::Network<float>& net, const std::vector<TrainingSample>& data,
                  const TrainConfig& cfg,
                  const std::function<void(const LossRecord&)>& progress = {});

/// "iteration,raw_loss,mean_loss" with one row per iteration.
std::string loss_csv(const TrainResult& r);

}  // namespace voxsem::ssc
