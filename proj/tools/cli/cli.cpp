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

#include <exception>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "voxsem/common/error.hpp"

namespace voxsem::cli {

std::string sample_stem(const std::string& view_path) {
  std::string stem = fs::path(view_path).filename().string();
  const auto dot = stem.find('.');
  return dot == std::string::npos ? stem : stem.substr(0, dot);
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"voxsem: semantic scene completion from a single depth image"};
  app.require_subcommand(1);

  ForgeOptions fo;
  auto* forge = app.add_subcommand("forge", "Generate scenes, views, depth maps and ground truth");
  forge->add_option("--out", fo.out, "Output directory")->required();
  forge->add_option("--seed", fo.seed, "Root seed")->required();
  forge->add_option("--scenes", fo.scenes, "Number of scenes")->check(CLI::NonNegativeNumber);
  forge->add_option("--views-per-scene", fo.views_per_scene, "Maximum views per scene")
      ->check(CLI::PositiveNumber);
  forge->add_option("--scale", fo.scale, "Grid preset")->check(CLI::IsMember({"full", "toy"}));
  forge->add_option("--d-max", fo.d_max, "Truncation recorded in the manifest (m)");

  EncodeOptions eo;
  double encode_dmax = 0.0;
  auto* encode = app.add_subcommand("encode", "Encode depth into (flipped) TSDF volumes");
  encode->add_option("--manifest", eo.manifest, "Encode every sample of a manifest");
  encode->add_option("--depth", eo.depth, "Depth PNG (millimeters)");
  encode->add_option("--camera", eo.camera, "Camera or view JSON");
  encode->add_option("--out", eo.out, "Output TSDF VOXB");
  encode->add_option("--states-out", eo.states_out, "Optional output state VOXB");
  encode->add_option("--scale", eo.scale, "Grid preset")
      ->check(CLI::IsMember({"full", "toy", "view"}));
  encode->add_option("--mode", eo.mode, "TSDF encoder")
      ->check(CLI::IsMember({"projective", "accurate"}));
  encode->add_flag("--no-flip", eo.no_flip, "Keep the unflipped TSDF");
  auto* dmax_opt = encode->add_option("--d-max", encode_dmax, "Truncation distance (m)");

  TrainOptions to;
  auto* train = app.add_subcommand("train", "Train the completion network");
  train->add_option("--manifest", to.manifest, "Dataset manifest")->required();
  train->add_option("--out-dir", to.out_dir, "Output directory")->required();
  train->add_option("--seed", to.seed, "Root seed")->required();
  train->add_option("--iterations", to.iterations)->check(CLI::PositiveNumber);
  train->add_option("--lr", to.lr)->check(CLI::PositiveNumber);
  train->add_option("--momentum", to.momentum)->check(CLI::Range(0.0, 0.999999));
  train->add_option("--accumulation", to.accumulation_k)->check(CLI::PositiveNumber);
  train->add_option("--channel-multiplier", to.channel_multiplier)->check(CLI::PositiveNumber);
  train->add_flag("--binary", to.binary, "Train occupancy only (2 classes)");

  InferOptions io;
  auto* infer = app.add_subcommand("infer", "Predict labels from depth");
  infer->add_option("--network", io.network, "Network JSON")->required();
  infer->add_option("--checkpoint", io.checkpoint, "Checkpoint")->required();
  infer->add_option("--manifest", io.manifest, "Predict every sample of a manifest");
  infer->add_option("--out-dir", io.out_dir, "Batch output directory");
  infer->add_option("--depth", io.depth, "Depth PNG");
  infer->add_option("--view", io.view, "View JSON");
  infer->add_option("--out", io.out, "Output label VOXB");

  EvalOptions vo;
  auto* eval = app.add_subcommand("eval", "Score predictions against ground truth");
  eval->add_option("--task", vo.task)->check(CLI::IsMember({"completion", "semantic", "surface"}));
  eval->add_flag("--undefined-as-zero", vo.undefined_as_zero,
                 "Average undefined classes as 0 instead of excluding them");
  eval->add_option("--out", vo.out, "Report JSON");
  eval->add_option("--manifest", vo.manifest);
  eval->add_option("--pred-dir", vo.pred_dir);
  eval->add_option("--pred", vo.pred);
  eval->add_option("--gt", vo.gt);
  eval->add_option("--states", vo.states);

  ExportOptions xo;
  auto* exp = app.add_subcommand("export", "Export a voxel grid as a mesh or slice montage");
  exp->add_option("--grid", xo.grid, "Input VOXB")->required();
  exp->add_option("--out", xo.out, "Output .ply, .obj or .png")->required();
  exp->add_option("--style", xo.style)->check(CLI::IsMember({"ply", "obj", "slices"}));
  exp->add_option("--axis", xo.axis)->check(CLI::IsMember({"x", "y", "z"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  if (dmax_opt->count() > 0) eo.d_max = encode_dmax;

  try {
    if (forge->parsed()) return cmd_forge(fo, err);
    if (encode->parsed()) return cmd_encode(eo, err);
    if (train->parsed()) return cmd_train(to, err);
    if (infer->parsed()) return cmd_infer(io, err);
    if (eval->parsed()) return cmd_eval(vo, out, err);
    if (exp->parsed()) return cmd_export(xo, err);
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace voxsem::cli
