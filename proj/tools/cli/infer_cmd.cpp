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

#include <nlohmann/json.hpp>

#include "cli/commands.hpp"
#include "voxsem/common/error.hpp"
#include "voxsem/common/file_io.hpp"
#include "voxsem/common/png_io.hpp"
#include "voxsem/forge/dataset.hpp"
#include "voxsem/forge/view.hpp"
#include "voxsem/ssc/infer.hpp"
#include "voxsem/tsdf/tsdf.hpp"
#include "voxsem/volume/voxb.hpp"

namespace voxsem::cli {

namespace {

void check_view_matches(const forge::ViewRecord& v, const nn::NetworkSpec& spec,
                        const std::string& what) {
  const GridDims& d = v.grid.dims;
  const GridDims& e = spec.input_dims;
  if (!(d == e)) {
    throw ValidationError(what + ": network expects " + std::to_string(e.nx) + "x" +
                          std::to_string(e.ny) + "x" + std::to_string(e.nz) + ", view grid is " +
                          std::to_string(d.nx) + "x" + std::to_string(d.ny) + "x" +
                          std::to_string(d.nz));
  }
}

}  // namespace

int cmd_infer(const InferOptions& o, std::ostream& log) {
  const nn::NetworkSpec spec =
      nn::spec_from_json(read_file_text(o.network), o.network.string());
  nn::Network<float> net = ssc::load_network(spec, o.checkpoint);

  if (!o.manifest.empty()) {
    if (o.out_dir.empty()) throw ValidationError("batch infer needs --out-dir");
    const forge::Manifest m = forge::read_manifest(o.manifest);
    nlohmann::json list = nlohmann::json::array();
    for (const auto& s : m.samples) {
      const forge::ViewRecord view = forge::load_view(m.resolve(s.view));
      check_view_matches(view, spec, s.view);
      const DepthMap depth = read_depth_png(m.resolve(s.depth));
      const ssc::Prediction p =
          ssc::infer(net, depth, view.camera, view.grid, view.room, m.d_max);
      const std::string name = sample_stem(s.view) + ".pred.voxb";
      write_file_atomic(o.out_dir / name, encode_voxb(p.labels));
      list.push_back({{"view", s.view}, {"prediction", name}});
      log << "predicted " << name << "\n";
    }
    write_file_atomic(o.out_dir / "predictions.json",
                      nlohmann::json{{"format_version", 1}, {"predictions", list}}.dump(2) + "\n");
    return kExitOk;
  }

  if (o.depth.empty() || o.view.empty() || o.out.empty()) {
    throw ValidationError("infer needs --manifest and --out-dir, or --depth, --view and --out");
  }
  const forge::ViewRecord view = forge::load_view(o.view);
  check_view_matches(view, spec, o.view.string());
  const ssc::Prediction p = ssc::infer(net, read_depth_png(o.depth), view.camera, view.grid,
                                       view.room, tsdf::kDefaultTruncation);
  write_file_atomic(o.out, encode_voxb(p.labels));
  log << "predicted " << o.out.string() << "\n";
  return kExitOk;
}

}  // namespace voxsem::cli
