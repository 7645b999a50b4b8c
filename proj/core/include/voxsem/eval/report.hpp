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

#include <optional>
#include <string>
#include <vector>

#include "voxsem/eval/metrics.hpp"

namespace voxsem::eval {

struct MetricsReport {
  MaskTag task = MaskTag::SemanticFull;
  std::int64_t evaluated_voxels = 0;
  CompletionMetrics completion;
  SemanticMetrics semantic;
};

/// Completion and semantic metrics over one mask.
MetricsReport evaluate(const LabelGrid& pred, const LabelGrid& gt, const EvalMask& mask,
                       UndefinedPolicy policy = UndefinedPolicy::Exclude);

/// Sums counts across reports of the same task and recomputes the ratios.
MetricsReport merge_reports(const std::vector<MetricsReport>& reports);

/// JSON with format_version; undefined values are null.
std::string report_to_json(const MetricsReport& r);

/// Completion line plus a fixed-width per-class row in the column order
/// "ceil. floor wall win. chair bed sofa table tvs furn. objs. avg.".
/// Undefined entries print as "-".
std::string report_table(const MetricsReport& r);

}  // namespace voxsem::eval
