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

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "voxsem/common/categories.hpp"
#include "voxsem/volume/grid.hpp"
#include "voxsem/volume/visibility.hpp"

namespace voxsem::eval {

using LabelGrid = VoxelGrid<std::uint8_t>;
/// 1 where a voxel is evaluated.
using MaskGrid = VoxelGrid<std::uint8_t>;

enum class MaskTag { CompletionOccluded, SemanticFull, SurfaceOnly };

const char* to_string(MaskTag t);
/// Accepts "completion", "semantic" and "surface".
MaskTag parse_task(const std::string& task);

struct EvalMask {
  MaskGrid mask;
  MaskTag tag = MaskTag::SemanticFull;
};

/// CompletionOccluded selects Occluded voxels, SurfaceOnly selects Surface
/// voxels and SemanticFull selects both. Every other state is excluded.
EvalMask build_mask(const VoxelGrid<VoxelState>& states, MaskTag tag);

struct CompletionMetrics {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;
  /// Empty when the denominator is zero.
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> iou;
};

/// Binary occupancy (label != 0) counts over masked voxels.
CompletionMetrics completion_metrics(const LabelGrid& pred, const LabelGrid& gt,
                                     const MaskGrid& mask);

enum class UndefinedPolicy { Exclude, AsZero };

const char* to_string(UndefinedPolicy p);

struct SemanticMetrics {
  /// Indexed by label; entry 0 (empty) is never set.
  std::array<std::int64_t, kNumClasses> intersection{};
  std::array<std::int64_t, kNumClasses> union_count{};
  std::array<std::optional<double>, kNumClasses> iou{};
  std::optional<double> average;
  int defined_classes = 0;
  UndefinedPolicy policy = UndefinedPolicy::Exclude;
};

/// Per-class IoU for labels 1..11 over masked voxels. Classes with an empty
/// union are undefined; the average skips them or counts them as zero.
SemanticMetrics semantic_iou(const LabelGrid& pred, const LabelGrid& gt, const MaskGrid& mask,
                             UndefinedPolicy policy = UndefinedPolicy::Exclude);

/// Fraction of masked voxels where pred equals gt; empty for an empty mask.
std::optional<double> masked_accuracy(const LabelGrid& pred, const LabelGrid& gt,
                                      const MaskGrid& mask);

}  // namespace voxsem::eval
