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

#include <limits>

#include <nlohmann/json.hpp>

#include "cli/commands.hpp"
#include "voxsem/common/error.hpp"
#include "voxsem/common/file_io.hpp"
#include "voxsem/common/png_io.hpp"
#include "voxsem/forge/dataset.hpp"
#include "voxsem/forge/view.hpp"
#include "voxsem/tsdf/tsdf.hpp"
#include "voxsem/volume/voxb.hpp"

namespace voxsem::cli {

namespace {

tsdf::TsdfMode parse_mode(const std::string& m) {
  if (m == "projective") return tsdf::TsdfMode::Projective;
  if (m == "accurate") return tsdf::TsdfMode::Accurate;
  throw ValidationError("unknown TSDF mode '" + m + "'");
}

/// A camera JSON without a room is treated as an unbounded room.
struct CameraInput {
  PinholeCamera camera;
  std::optional<forge::ViewRecord> view;
};

CameraInput load_camera_input(const fs::path& path) {
  const std::string text = read_file_text(path);
  bool is_view = false;
  try {
    is_view = nlohmann::json::parse(text).contains("grid");
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  CameraInput in;
  if (is_view) {
    in.view = forge::view_from_json(text, path.string());
    in.camera = in.view->camera;
  } else {
    in.camera = forge::camera_from_json(text, path.string());
  }
  return in;
}

void encode_one(const DepthMap& depth, const PinholeCamera& cam, const GridSpec& grid,
                const Aabb& room, double d_max, tsdf::TsdfMode mode, bool flip,
                const fs::path& out, const fs::path& states_out) {
  const tsdf::EncodedView v = tsdf::encode_view(depth, cam, grid, room, d_max, mode, flip);
  write_file_atomic(out, tsdf::encode_tsdf(v.tsdf));
  if (!states_out.empty()) write_file_atomic(states_out, encode_voxb(v.states));
}

}  // namespace

int cmd_encode(const EncodeOptions& o, std::ostream& log) {
  const tsdf::TsdfMode mode = parse_mode(o.mode);
  const bool flip = !o.no_flip;
  if (!o.manifest.empty()) {
    const forge::Manifest m = forge::read_manifest(o.manifest);
    if (o.d_max && *o.d_max != m.d_max) {
      throw ValidationError("--d-max " + std::to_string(*o.d_max) + " differs from manifest d_max " +
                            std::to_string(m.d_max));
    }
    for (const auto& s : m.samples) {
      const forge::ViewRecord view = forge::load_view(m.resolve(s.view));
      const DepthMap depth = read_depth_png(m.resolve(s.depth));
      if (!(view.grid.dims == m.grid.dims)) {
        throw ValidationError(s.view + ": view grid does not match the manifest grid");
      }
      encode_one(depth, view.camera, view.grid, view.room, m.d_max, mode, flip,
                 m.resolve(s.tsdf), {});
      log << "encoded " << s.tsdf << "\n";
    }
    return kExitOk;
  }

  if (o.depth.empty() || o.camera.empty() || o.out.empty()) {
    throw ValidationError("encode needs --manifest, or --depth, --camera and --out");
  }
  const double d_max = o.d_max.value_or(tsdf::kDefaultTruncation);
  const CameraInput in = load_camera_input(o.camera);
  const DepthMap depth = read_depth_png(o.depth);
  constexpr double kHuge = 1e6;
  const Aabb room = in.view ? in.view->room : Aabb{{-kHuge, -kHuge, -kHuge}, {kHuge, kHuge, kHuge}};
  GridSpec grid;
  if (o.scale == "view") {
    if (!in.view) throw ValidationError("--scale view requires a view JSON with a grid");
    grid = in.view->grid;
  } else {
    const GridSpec shape = forge::preset_grid(forge::parse_scale_preset(o.scale));
    const double floor_y = in.view ? in.view->room.min.y : in.camera.position().y - 1.5;
    Aabb frame_room = room;
    frame_room.min.y = floor_y;
    grid = forge::place_view_grid(shape, in.camera, frame_room);
  }
  encode_one(depth, in.camera, grid, room, d_max, mode, flip, o.out, o.states_out);
  log << "encoded " << o.out.string() << " (" << grid.dims.nx << "x" << grid.dims.ny << "x"
      << grid.dims.nz << " at " << grid.voxel_size << " m, d_max " << d_max << ")\n";
  return kExitOk;
}

}  // namespace voxsem::cli
