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

#include "cli/commands.hpp"
#include "voxsem/common/error.hpp"
#include "voxsem/common/file_io.hpp"
#include "voxsem/eval/report.hpp"
#include "voxsem/forge/dataset.hpp"
#include "voxsem/ssc/sampling.hpp"
#include "voxsem/volume/voxb.hpp"

namespace voxsem::cli {

namespace {

std::string dims(const GridDims& d) {
  return std::to_string(d.nx) + "x" + std::to_string(d.ny) + "x" + std::to_string(d.nz);
}

/// Brings ground truth to the prediction resolution.
ssc::DownsampledTargets align_targets(const VoxelGrid<std::uint8_t>& pred,
                                      VoxelGrid<std::uint8_t> gt, VoxelGrid<VoxelState> states,
                                      const std::string& what) {
  if (!(gt.spec.dims == states.spec.dims)) {
    throw ValidationError(what + ": ground truth is " + dims(gt.spec.dims) + ", states are " +
                          dims(states.spec.dims));
  }
  const GridDims& p = pred.spec.dims;
  const GridDims& g = gt.spec.dims;
  if (p == g) return {std::move(gt), std::move(states)};
  const int f = g.nx / std::max(1, p.nx);
  if (f < 2 || g.nx != p.nx * f || g.ny != p.ny * f || g.nz != p.nz * f) {
    throw ValidationError(what + ": expected prediction dims " + dims(g) + " or an integer "
                          "reduction of them, found " + dims(p));
  }
  return ssc::downsample_labels(gt, states, f);
}

}  // namespace

int cmd_eval(const EvalOptions& o, std::ostream& out, std::ostream& log) {
  const eval::MaskTag tag = eval::parse_task(o.task);
  const eval::UndefinedPolicy policy =
      o.undefined_as_zero ? eval::UndefinedPolicy::AsZero : eval::UndefinedPolicy::Exclude;
  std::vector<eval::MetricsReport> reports;

  auto score = [&](const fs::path& pred_path, const fs::path& gt_path, const fs::path& st_path) {
    const auto pred = load_label_grid(pred_path);
    auto t = align_targets(pred, load_label_grid(gt_path), load_state_grid(st_path),
                           pred_path.string());
    const eval::EvalMask mask = eval::build_mask(t.states, tag);
    reports.push_back(eval::evaluate(pred, t.labels, mask, policy));
  };

  if (!o.manifest.empty()) {
    if (o.pred_dir.empty()) throw ValidationError("batch eval needs --pred-dir");
    const forge::Manifest m = forge::read_manifest(o.manifest);
    for (const auto& s : m.samples) {
      score(o.pred_dir / (sample_stem(s.view) + ".pred.voxb"), m.resolve(s.labels),
            m.resolve(s.states));
    }
    if (reports.empty()) throw ValidationError("manifest has no samples to evaluate");
  } else {
    if (o.pred.empty() || o.gt.empty() || o.states.empty()) {
      throw ValidationError("eval needs --manifest and --pred-dir, or --pred, --gt and --states");
    }
    score(o.pred, o.gt, o.states);
  }
  const eval::MetricsReport r = eval::merge_reports(reports);
  if (!o.out.empty()) write_file_atomic(o.out, eval::report_to_json(r));
  out << eval::report_table(r);
  log << "evaluated " << reports.size() << " volume(s)\n";
  return kExitOk;
}

}  // namespace voxsem::cli
