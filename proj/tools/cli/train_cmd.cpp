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

#include <chrono>
#include <cstdio>

#include "cli/commands.hpp"
#include "voxsem/common/file_io.hpp"
#include "voxsem/forge/dataset.hpp"
#include "voxsem/neural/checkpoint.hpp"
#include "voxsem/ssc/dataset.hpp"
#include "voxsem/ssc/sscnet.hpp"
#include "voxsem/ssc/train.hpp"

namespace voxsem::cli {

int cmd_train(const TrainOptions& o, std::ostream& log) {
  const forge::Manifest m = forge::read_manifest(o.manifest);
  ssc::SscnetOptions net_opts;
  net_opts.channel_multiplier = o.channel_multiplier;
  net_opts.num_classes = o.binary ? 2 : kNumClasses;
  const nn::NetworkSpec spec = ssc::build_sscnet(m.grid, net_opts);
  const auto data = ssc::load_training_set(m, spec, o.binary);

  ssc::TrainConfig cfg;
  cfg.lr = o.lr;
  cfg.momentum = o.momentum;
  cfg.accumulation_k = o.accumulation_k;
  cfg.iterations = o.iterations;
  cfg.seed = o.seed;
  cfg.manifest = o.manifest.string();

  nn::Network<float> net(spec);
  const auto start = std::chrono::steady_clock::now();
  const int every = std::max(1, o.iterations / 20);
  const ssc::TrainResult r = ssc::train(net, data, cfg, [&](const ssc::LossRecord& rec) {
    if (rec.iteration % every == 0 || rec.iteration + 1 == o.iterations) {
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      char line[128];
      std::snprintf(line, sizeof(line), "iter %5d  mean loss %.5f  (%.1f s)\n", rec.iteration,
                    rec.mean, secs);
      log << line << std::flush;
    }
  });

  write_file_atomic(o.out_dir / "network.json", nn::spec_to_json(spec));
  nn::write_checkpoint(o.out_dir / "checkpoint.sscw", net.state());
  write_file_atomic(o.out_dir / "loss.csv", ssc::loss_csv(r));
  log << "wrote " << (o.out_dir / "checkpoint.sscw").string() << "\n";
  return kExitOk;
}

}  // namespace voxsem::cli
