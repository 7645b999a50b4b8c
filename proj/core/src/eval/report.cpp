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

#include "voxsem/eval/report.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

#include "voxsem/common/error.hpp"

namespace voxsem::eval {

using nlohmann::json;

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string cell(const std::optional<double>& v) {
  char buf[16];
  if (v) {
    std::snprintf(buf, sizeof(buf), "%6.1f", 100.0 * *v);
  } else {
    std::snprintf(buf, sizeof(buf), "%6s", "-");
  }
  return buf;
}

std::optional<double> ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

void finish(MetricsReport& r) {
  CompletionMetrics& c = r.completion;
  c.precision = ratio(c.tp, c.tp + c.fp);
  c.recall = ratio(c.tp, c.tp + c.fn);
  c.iou = ratio(c.tp, c.tp + c.fp + c.fn);
  SemanticMetrics& s = r.semantic;
  double sum = 0.0;
  int counted = 0;
  s.defined_classes = 0;
  for (int k = 1; k < kNumClasses; ++k) {
    s.iou[k] = ratio(s.intersection[k], s.union_count[k]);
    if (s.iou[k]) {
      sum += *s.iou[k];
      ++s.defined_classes;
      ++counted;
    } else if (s.policy == UndefinedPolicy::AsZero) {
      ++counted;
    }
  }
  s.average = counted > 0 ? std::optional<double>(sum / counted) : std::nullopt;
}

}  // namespace

MetricsReport evaluate(const LabelGrid& pred, const LabelGrid& gt, const EvalMask& mask,
                       UndefinedPolicy policy) {
  MetricsReport r;
  r.task = mask.tag;
  r.completion = completion_metrics(pred, gt, mask.mask);
  r.semantic = semantic_iou(pred, gt, mask.mask, policy);
  for (auto m : mask.mask.data) r.evaluated_voxels += m != 0;
  return r;
}

MetricsReport merge_reports(const std::vector<MetricsReport>& reports) {
  if (reports.empty()) throw ValidationError("no reports to merge");
  MetricsReport out;
  out.task = reports.front().task;
  out.semantic.policy = reports.front().semantic.policy;
  for (const auto& r : reports) {
    if (r.task != out.task || r.semantic.policy != out.semantic.policy) {
      throw ValidationError("cannot merge reports of different tasks or policies");
    }
    out.evaluated_voxels += r.evaluated_voxels;
    out.completion.tp += r.completion.tp;
    out.completion.fp += r.completion.fp;
    out.completion.fn += r.completion.fn;
    out.completion.tn += r.completion.tn;
    for (int k = 0; k < kNumClasses; ++k) {
      out.semantic.intersection[k] += r.semantic.intersection[k];
      out.semantic.union_count[k] += r.semantic.union_count[k];
    }
  }
  finish(out);
  return out;
}

std::string report_to_json(const MetricsReport& r) {
  json j;
  j["format_version"] = 1;
  j["task"] = to_string(r.task);
  j["evaluated_voxels"] = r.evaluated_voxels;
  j["completion"] = {{"tp", r.completion.tp},
                     {"fp", r.completion.fp},
                     {"fn", r.completion.fn},
                     {"tn", r.completion.tn},
                     {"precision", opt(r.completion.precision)},
                     {"recall", opt(r.completion.recall)},
                     {"iou", opt(r.completion.iou)}};
  json classes = json::object();
  for (int k = 1; k < kNumClasses; ++k) {
    classes[std::string(kCategoryNames[k])] = {{"iou", opt(r.semantic.iou[k])},
                                               {"intersection", r.semantic.intersection[k]},
                                               {"union", r.semantic.union_count[k]}};
  }
  j["semantic"] = {{"classes", classes},
                   {"average", opt(r.semantic.average)},
                   {"defined_classes", r.semantic.defined_classes},
                   {"undefined_policy", to_string(r.semantic.policy)}};
  return j.dump(2) + "\n";
}

std::string report_table(const MetricsReport& r) {
  std::string out;
  out += "task: " + std::string(to_string(r.task)) + "  voxels: " +
         std::to_string(r.evaluated_voxels) + "  undefined classes: " +
         (r.semantic.policy == UndefinedPolicy::Exclude ? "excluded" : "counted as 0") + "\n";
  out += "completion " + std::string("  prec.") + " recall" + "    IoU\n";
  out += "          " + cell(r.completion.precision) + " " + cell(r.completion.recall) + " " +
         cell(r.completion.iou) + "\n";
  char buf[16];
  for (int k = 1; k < kNumClasses; ++k) {
    std::snprintf(buf, sizeof(buf), "%6s", std::string(kCategoryShortNames[k]).c_str());
    out += buf;
    out += " ";
  }
  out += "  avg.\n";
  for (int k = 1; k < kNumClasses; ++k) out += cell(r.semantic.iou[k]) + " ";
  out += cell(r.semantic.average) + "\n";
  return out;
}

}  // namespace voxsem::eval
