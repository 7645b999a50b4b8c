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


#include <gtest/gtest.h>

#include <algorithm>
#include <nlohmann/json.hpp>
#include <numeric>

#include "support/eval_checks.hpp"
#include "voxsem/common/error.hpp"
#include "voxsem/eval/metrics.hpp"
#include "voxsem/eval/report.hpp"

namespace voxsem::eval {
namespace {

GridSpec line(int n) {
  GridSpec g;
  g.dims = {n, 1, 1};
  return g;
}

LabelGrid labels(std::initializer_list<int> v) {
  LabelGrid g(line(static_cast<int>(v.size())));
  std::size_t i = 0;
  for (int x : v) g.data[i++] = static_cast<std::uint8_t>(x);
  return g;
}

TEST(BuildMask, TagsSelectStates) {
  VoxelGrid<VoxelState> s(line(5));
  s.data = {VoxelState::ObservedFree, VoxelState::Surface, VoxelState::Occluded,
            VoxelState::OutsideFov, VoxelState::OutsideRoom};
  EXPECT_EQ(build_mask(s, MaskTag::CompletionOccluded).mask.data,
            (std::vector<std::uint8_t>{0, 0, 1, 0, 0}));
  EXPECT_EQ(build_mask(s, MaskTag::SemanticFull).mask.data,
            (std::vector<std::uint8_t>{0, 1, 1, 0, 0}));
  EXPECT_EQ(build_mask(s, MaskTag::SurfaceOnly).mask.data,
            (std::vector<std::uint8_t>{0, 1, 0, 0, 0}));
  EXPECT_EQ(build_mask(s, MaskTag::SurfaceOnly).tag, MaskTag::SurfaceOnly);
}

TEST(BuildMask, SetIdentitiesOnRandomStates) {
  Rng rng(31);
  GridSpec g;
  g.dims = {9, 7, 5};
  VoxelGrid<VoxelState> s(g);
  for (auto& v : s.data) v = static_cast<VoxelState>(rng.below(kVoxelStateCount));
  const auto occ = build_mask(s, MaskTag::CompletionOccluded).mask;
  const auto sur = build_mask(s, MaskTag::SurfaceOnly).mask;
  const auto full = build_mask(s, MaskTag::SemanticFull).mask;
  for (std::int64_t v = 0; v < g.count(); ++v) {
    EXPECT_FALSE(occ[v] && sur[v]);
    EXPECT_EQ(full[v], occ[v] || sur[v]);
    if (s[v] == VoxelState::OutsideFov || s[v] == VoxelState::OutsideRoom) EXPECT_FALSE(full[v]);
  }
  VoxelGrid<VoxelState> fov(g, VoxelState::OutsideFov);
  for (auto tag : {MaskTag::CompletionOccluded, MaskTag::SemanticFull, MaskTag::SurfaceOnly}) {
    const auto m = build_mask(fov, tag).mask.data;
    EXPECT_TRUE(std::all_of(m.begin(), m.end(), [](std::uint8_t x) { return x == 0; }));
  }
}

TEST(BuildMask, ParseTask) {
  EXPECT_EQ(parse_task("completion"), MaskTag::CompletionOccluded);
  EXPECT_EQ(parse_task("semantic"), MaskTag::SemanticFull);
  EXPECT_EQ(parse_task("surface"), MaskTag::SurfaceOnly);
  EXPECT_THROW(parse_task("volume"), ValidationError);
}

TEST(Completion, HandEnumeratedCase) {
  const auto m = completion_metrics(labels({3, 6, 0, 0}), labels({2, 0, 9, 0}), MaskGrid(line(4), 1));
  EXPECT_EQ(m.tp, 1);
  EXPECT_EQ(m.fp, 1);
  EXPECT_EQ(m.fn, 1);
  EXPECT_EQ(m.tn, 1);
  EXPECT_EQ(*m.iou, 1.0 / 3.0);
  EXPECT_EQ(*m.precision, 0.5);
  EXPECT_EQ(*m.recall, 0.5);
}

TEST(Completion, IdentityAndUndefinedDenominators) {
  const auto gt = labels({1, 0, 5, 11, 0});
  const auto m = completion_metrics(gt, gt, MaskGrid(line(5), 1));
  EXPECT_EQ(*m.precision, 1.0);
  EXPECT_EQ(*m.recall, 1.0);
  EXPECT_EQ(*m.iou, 1.0);
  const auto e = completion_metrics(labels({0, 0}), labels({0, 0}), MaskGrid(line(2), 1));
  EXPECT_FALSE(e.precision);
  EXPECT_FALSE(e.recall);
  EXPECT_FALSE(e.iou);
}

TEST(Completion, ShapeMismatchRejected) {
  EXPECT_THROW(completion_metrics(labels({0, 1}), labels({0, 1, 2}), MaskGrid(line(2), 1)),
               ValidationError);
  EXPECT_THROW(semantic_iou(labels({0, 1}), labels({0, 1}), MaskGrid(line(3), 1)), ValidationError);
}

TEST(Semantic, IdentityWithAllClasses) {
  LabelGrid gt(line(kNumClasses));
  std::iota(gt.data.begin(), gt.data.end(), 0);
  const auto s = semantic_iou(gt, gt, MaskGrid(line(kNumClasses), 1));
  for (int k = 1; k < kNumClasses; ++k) EXPECT_EQ(*s.iou[k], 1.0);
  EXPECT_EQ(*s.average, 1.0);
  EXPECT_EQ(s.defined_classes, 11);
}

TEST(Semantic, AbsentClassUndefinedAndPolicySwitch) {
  const auto pred = labels({6, 6, 1, 0});
  const auto gt = labels({6, 1, 1, 0});
  const MaskGrid mask(line(4), 1);
  const auto ex = semantic_iou(pred, gt, mask);
  EXPECT_EQ(*ex.iou[6], 0.5);
  EXPECT_EQ(*ex.iou[1], 0.5);
  EXPECT_FALSE(ex.iou[4]);
  EXPECT_EQ(ex.defined_classes, 2);
  EXPECT_EQ(*ex.average, 0.5);
  const auto zero = semantic_iou(pred, gt, mask, UndefinedPolicy::AsZero);
  EXPECT_FALSE(zero.iou[4]);
  EXPECT_DOUBLE_EQ(*zero.average, 1.0 / 11.0);
  const auto none = semantic_iou(labels({0}), labels({0}), MaskGrid(line(1), 1));
  EXPECT_FALSE(none.average);
}

TEST(Oracles, RandomGridsMatchConfusionAndCountingOracles) {
  Rng rng(32);
  for (int n = 0; n < 100; ++n) {
    ASSERT_EQ(testing::eval_oracle_violation(testing::random_eval_case(rng)), "") << n;
  }
}

TEST(Properties, IouBoundedByPrecisionAndRecall) {
  Rng rng(33);
  for (int n = 0; n < 50; ++n) {
    const auto c = testing::random_eval_case(rng);
    const auto m = completion_metrics(c.pred, c.gt, c.mask);
    if (!m.iou) continue;
    EXPECT_GE(*m.iou, 0.0);
    if (m.precision) EXPECT_LE(*m.iou, *m.precision);
    if (m.recall) EXPECT_LE(*m.iou, *m.recall);
  }
}

TEST(Properties, TraversalPermutationInvariance) {
  Rng rng(34);
  for (int n = 0; n < 20; ++n) {
    const auto c = testing::random_eval_case(rng);
    std::vector<std::size_t> perm(c.gt.data.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    auto p = c;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      p.pred.data[i] = c.pred.data[perm[i]];
      p.gt.data[i] = c.gt.data[perm[i]];
      p.mask.data[i] = c.mask.data[perm[i]];
    }
    const EvalMask a{c.mask, MaskTag::SemanticFull}, b{p.mask, MaskTag::SemanticFull};
    EXPECT_EQ(report_to_json(evaluate(c.pred, c.gt, a)), report_to_json(evaluate(p.pred, p.gt, b)));
  }
}

TEST(Properties, MaskedOutVoxelsNeverMatter) {
  Rng rng(35);
  for (int n = 0; n < 20; ++n) {
    const auto c = testing::random_eval_case(rng);
    auto d = c;
    for (std::size_t i = 0; i < d.mask.data.size(); ++i) {
      if (!d.mask.data[i]) {
        d.pred.data[i] = static_cast<std::uint8_t>(rng.below(kNumClasses));
        d.gt.data[i] = static_cast<std::uint8_t>(rng.below(kNumClasses));
      }
    }
    const EvalMask m{c.mask, MaskTag::CompletionOccluded};
    EXPECT_EQ(report_to_json(evaluate(c.pred, c.gt, m)), report_to_json(evaluate(d.pred, d.gt, m)));
  }
}

TEST(Report, MergeSumsCounts) {
  Rng rng(36);
  auto a = testing::random_eval_case(rng);
  auto b = testing::random_eval_case(rng);
  // Concatenate into one grid along x.
  GridSpec g;
  g.dims = {static_cast<int>(a.gt.data.size() + b.gt.data.size()), 1, 1};
  testing::EvalCase both{LabelGrid(g), LabelGrid(g), MaskGrid(g)};
  for (auto f : {&testing::EvalCase::pred, &testing::EvalCase::gt, &testing::EvalCase::mask}) {
    auto& out = (both.*f).data;
    std::copy((a.*f).data.begin(), (a.*f).data.end(), out.begin());
    std::copy((b.*f).data.begin(), (b.*f).data.end(), out.begin() + (a.*f).data.size());
  }
  const auto merged = merge_reports({evaluate(a.pred, a.gt, {a.mask, MaskTag::SemanticFull}),
                                     evaluate(b.pred, b.gt, {b.mask, MaskTag::SemanticFull})});
  EXPECT_EQ(report_to_json(merged),
            report_to_json(evaluate(both.pred, both.gt, {both.mask, MaskTag::SemanticFull})));
  EXPECT_THROW(merge_reports({evaluate(a.pred, a.gt, {a.mask, MaskTag::SemanticFull}),
                              evaluate(a.pred, a.gt, {a.mask, MaskTag::SurfaceOnly})}),
               ValidationError);
  EXPECT_THROW(merge_reports({}), ValidationError);
}

TEST(Report, JsonAndTableLayout) {
  const auto r = evaluate(labels({6, 6, 1, 0}), labels({6, 1, 1, 0}),
                          {MaskGrid(line(4), 1), MaskTag::SemanticFull});
  const auto j = nlohmann::json::parse(report_to_json(r));
  EXPECT_EQ(j["task"], "semantic");
  EXPECT_EQ(j["evaluated_voxels"], 4);
  EXPECT_TRUE(j["semantic"]["classes"]["tvs"]["iou"].is_null());
  EXPECT_EQ(j["semantic"]["classes"]["bed"]["iou"], 0.5);
  EXPECT_EQ(j["semantic"]["undefined_policy"], "exclude");
  const std::string t = report_table(r);
  EXPECT_NE(t.find(" ceil.  floor   wall   win.  chair    bed   sofa  table    tvs  furn.  objs.   avg."),
            std::string::npos);
  EXPECT_NE(t.find("undefined classes: excluded"), std::string::npos);
}

}  // namespace
}  // namespace voxsem::eval
