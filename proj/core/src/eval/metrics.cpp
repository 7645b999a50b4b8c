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

#include "voxsem/eval/metrics.hpp"

#include "voxsem/common/error.hpp"

namespace voxsem::eval {

namespace {

void check_shapes(const LabelGrid& pred, const LabelGrid& gt, const MaskGrid& mask) {
  auto dims = [](const GridDims& d) {
    return std::to_string(d.nx) + "x" + std::to_string(d.ny) + "x" + std::to_string(d.nz);
  };
  if (!(pred.spec.dims == gt.spec.dims) || !(mask.spec.dims == gt.spec.dims) ||
      !pred.consistent() || !gt.consistent() || !mask.consistent()) {
    throw ValidationError("metric inputs differ in shape: pred " + dims(pred.spec.dims) +
                          ", gt " + dims(gt.spec.dims) + ", mask " + dims(mask.spec.dims));
  }
}

std::optional<double> ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

const char* to_string(MaskTag t) {
  switch (t) {
    case MaskTag::CompletionOccluded: return "completion";
    case MaskTag::SemanticFull: return "semantic";
    case MaskTag::SurfaceOnly: return "surface";
  }
  return "?";
}

MaskTag parse_task(const std::string& task) {
  if (task == "completion") return MaskTag::CompletionOccluded;
  if (task == "semantic") return MaskTag::SemanticFull;
  if (task == "surface") return MaskTag::SurfaceOnly;
  throw ValidationError("unknown task '" + task + "' (expected completion, semantic or surface)");
}

const char* to_string(UndefinedPolicy p) {
  return p == UndefinedPolicy::Exclude ? "exclude" : "zero";
}

EvalMask build_mask(const VoxelGrid<VoxelState>& states, MaskTag tag) {
  EvalMask m{MaskGrid(states.spec, 0), tag};
  for (std::int64_t v = 0; v < states.spec.count(); ++v) {
    const VoxelState s = states[v];
    bool on = false;
    switch (tag) {
      case MaskTag::CompletionOccluded: on = s == VoxelState::Occluded; break;
      case MaskTag::SurfaceOnly: on = s == VoxelState::Surface; break;
      case MaskTag::SemanticFull:
        on = s == VoxelState::Occluded || s == VoxelState::Surface;
        break;
    }
    m.mask[v] = on ? 1 : 0;
  }
  return m;
}

CompletionMetrics completion_metrics(const LabelGrid& pred, const LabelGrid& gt,
                                     const MaskGrid& mask) {
  check_shapes(pred, gt, mask);
  CompletionMetrics m;
  for (std::int64_t v = 0; v < gt.spec.count(); ++v) {
    if (!mask[v]) continue;
    const bool p = pred[v] != 0;
    const bool g = gt[v] != 0;
    if (p && g) ++m.tp;
    else if (p) ++m.fp;
    else if (g) ++m.fn;
    else ++m.tn;
  }
  m.precision = ratio(m.tp, m.tp + m.fp);
  m.recall = ratio(m.tp, m.tp + m.fn);
  m.iou = ratio(m.tp, m.tp + m.fp + m.fn);
  return m;
}

SemanticMetrics semantic_iou(const LabelGrid& pred, const LabelGrid& gt, const MaskGrid& mask,
                             UndefinedPolicy policy) {
  check_shapes(pred, gt, mask);
  SemanticMetrics m;
  m.policy = policy;
  for (std::int64_t v = 0; v < gt.spec.count(); ++v) {
    if (!mask[v]) continue;
    const std::uint8_t p = pred[v];
    const std::uint8_t g = gt[v];
    if (p >= kNumClasses || g >= kNumClasses) throw ValidationError("label out of range in metrics");
    if (p == g) {
      if (p != 0) {
        ++m.intersection[p];
        ++m.union_count[p];
      }
    } else {
      if (p != 0) ++m.union_count[p];
      if (g != 0) ++m.union_count[g];
    }
  }
  double sum = 0.0;
  int counted = 0;
  for (int c = 1; c < kNumClasses; ++c) {
    m.iou[c] = ratio(m.intersection[c], m.union_count[c]);
    if (m.iou[c]) {
      sum += *m.iou[c];
      ++m.defined_classes;
      ++counted;
    } else if (policy == UndefinedPolicy::AsZero) {
      ++counted;
    }
  }
  if (counted > 0) m.average = sum / counted;
  return m;
}

std::optional<double> masked_accuracy(const LabelGrid& pred, const LabelGrid& gt,
                                      const MaskGrid& mask) {
  check_shapes(pred, gt, mask);
  std::int64_t n = 0, hit = 0;
  for (std::int64_t v = 0; v < gt.spec.count(); ++v) {
    if (!mask[v]) continue;
    ++n;
    if (pred[v] == gt[v]) ++hit;
  }
  return ratio(hit, n);
}

}  // namespace voxsem::eval
