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
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace voxsem::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;

namespace fs = std::filesystem;

struct ForgeOptions {
  fs::path out;
  std::uint64_t seed = 0;
  int scenes = 1;
  int views_per_scene = 5;
  std::string scale = "full";
  double d_max = 0.24;
};

struct EncodeOptions {
  /// Batch mode: encode every sample of a forge manifest.
  fs::path manifest;
  /// Single mode inputs.
  fs::path depth;
  fs::path camera;
  fs::path out;
  fs::path states_out;
  /// full, toy or view (the grid recorded in a view JSON).
  std::string scale = "full";
  std::string mode = "accurate";
  bool no_flip = false;
  std::optional<double> d_max;
};

struct TrainOptions {
  fs::path manifest;
  fs::path out_dir;
  std::uint64_t seed = 0;
  int iterations = 2000;
  double lr = 0.01;
  double momentum = 0.9;
  int accumulation_k = 4;
  double channel_multiplier = 1.0;
  bool binary = false;
};

struct InferOptions {
  fs::path network;
  fs::path checkpoint;
  /// Batch mode.
  fs::path manifest;
  fs::path out_dir;
  /// Single mode.
  fs::path depth;
  fs::path view;
  fs::path out;
};

struct EvalOptions {
  std::string task = "semantic";
  bool undefined_as_zero = false;
  fs::path out;
  /// Batch mode: manifest ground truth against <pred_dir>/<view>.pred.voxb.
  fs::path manifest;
  fs::path pred_dir;
  /// Single mode.
  fs::path pred;
  fs::path gt;
  fs::path states;
};

struct ExportOptions {
  fs::path grid;
  fs::path out;
  /// ply, obj or slices; empty picks from the output extension.
  std::string style;
  /// Slice axis for montages: x, y or z.
  std::string axis = "y";
};

int cmd_forge(const ForgeOptions& o, std::ostream& log);
int cmd_encode(const EncodeOptions& o, std::ostream& log);
int cmd_train(const TrainOptions& o, std::ostream& log);
int cmd_infer(const InferOptions& o, std::ostream& log);
int cmd_eval(const EvalOptions& o, std::ostream& out, std::ostream& log);
int cmd_export(const ExportOptions& o, std::ostream& log);

/// Parses argv, runs the subcommand and maps ValidationError to exit code
/// 2 and IoError to exit code 3.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Name of a sample derived from its view path ("views/a_v0.json" -> "a_v0").
std::string sample_stem(const std::string& view_path);

}  // namespace voxsem::cli
