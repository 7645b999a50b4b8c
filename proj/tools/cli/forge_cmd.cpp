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

#include <cstdio>

#include "cli/commands.hpp"
#include "voxsem/forge/dataset.hpp"

namespace voxsem::cli {

int cmd_forge(const ForgeOptions& o, std::ostream& log) {
  forge::ForgeConfig cfg;
  cfg.out_dir = o.out;
  cfg.seed = o.seed;
  cfg.scenes = o.scenes;
  cfg.views_per_scene = o.views_per_scene;
  cfg.scale = forge::parse_scale_preset(o.scale);
  cfg.d_max = o.d_max;
  const forge::ForgeSummary s = forge::forge_dataset(cfg);

  char line[160];
  for (const auto& v : s.views) {
    std::snprintf(line, sizeof(line),
                  "%s  depth[1,8m] %.3f  object categories %d (>2)  object pixels %.3f\n",
                  v.name.c_str(), v.report.depth_fraction, v.report.object_categories,
                  v.report.object_fraction);
    log << line;
  }
  log << "scenes " << s.scenes << ", views " << s.views.size() << ", scenes without a valid view "
      << s.scenes_without_views << "\nmanifest " << s.manifest_path.string() << "\n";
  if (o.scenes > 0 && s.views.empty()) {
    log << "no valid views were produced\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace voxsem::cli
