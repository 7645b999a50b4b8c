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

#include "voxsem/forge/view.hpp"

#include <nlohmann/json.hpp>

#include "voxsem/common/error.hpp"
#include "voxsem/common/file_io.hpp"
#include "voxsem/volume/voxb.hpp"

namespace voxsem::forge {

using nlohmann::json;

namespace {

constexpr int kViewFormatVersion = 1;

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 json_vec(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ValidationError("expected a 3-vector");
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

json camera_json(const PinholeCamera& cam) {
  json rot = json::array();
  for (double v : cam.pose.rotation.m) rot.push_back(v);
  return {{"fx", cam.fx},
          {"fy", cam.fy},
          {"cx", cam.cx},
          {"cy", cam.cy},
          {"width", cam.width},
          {"height", cam.height},
          {"rotation", rot},
          {"translation", vec_json(cam.pose.translation)}};
}

PinholeCamera json_camera(const json& j) {
  PinholeCamera cam;
  cam.fx = j.at("fx").get<double>();
  cam.fy = j.at("fy").get<double>();
  cam.cx = j.at("cx").get<double>();
  cam.cy = j.at("cy").get<double>();
  cam.width = j.at("width").get<int>();
  cam.height = j.at("height").get<int>();
  const json& rot = j.at("rotation");
  if (!rot.is_array() || rot.size() != 9) throw ValidationError("rotation must have 9 entries");
  for (int i = 0; i < 9; ++i) cam.pose.rotation.m[i] = rot.at(i).get<double>();
  cam.pose.translation = json_vec(j.at("translation"));
  cam.validate();
  return cam;
}

json grid_json(const GridSpec& g) {
  return {{"origin", vec_json(g.origin)},
          {"voxel_size", g.voxel_size},
          {"dims", json::array({g.dims.nx, g.dims.ny, g.dims.nz})}};
}

GridSpec json_grid(const json& j) {
  GridSpec g;
  g.origin = json_vec(j.at("origin"));
  g.voxel_size = j.at("voxel_size").get<double>();
  const json& d = j.at("dims");
  g.dims = {d.at(0).get<int>(), d.at(1).get<int>(), d.at(2).get<int>()};
  g.validate();
  return g;
}

void check_version(const json& j, const std::string& source) {
  if (!j.contains("format_version") || j["format_version"].get<int>() != kViewFormatVersion) {
    throw ValidationError(source + ": unsupported format_version");
  }
}

template <typename F>
auto parse_json(const std::string& text, const std::string& source, F&& f) {
  try {
    const json j = json::parse(text);
    check_version(j, source);
    return f(j);
  } catch (const json::exception& e) {
    throw ValidationError(source + ": " + e.what());
  }
}

}  // namespace

const char* to_string(ScalePreset s) { return s == ScalePreset::Full ? "full" : "toy"; }

ScalePreset parse_scale_preset(const std::string& name) {
  if (name == "full") return ScalePreset::Full;
  if (name == "toy") return ScalePreset::Toy;
  throw ValidationError("unknown scale preset '" + name + "' (expected full or toy)");
}

GridSpec preset_grid(ScalePreset s) {
  GridSpec g;
  if (s == ScalePreset::Full) {
    g.voxel_size = 0.02;
    g.dims = {240, 144, 240};
  } else {
    g.voxel_size = 0.075;
    g.dims = {64, 32, 64};
  }
  return g;
}

int facing_quarter_turns(const PinholeCamera& world_camera) {
  const Vec3 forward = world_camera.pose.rotation.column(2);
  int best = 0;
  double best_z = -2.0;
  for (int q = 0; q < 4; ++q) {
    const double z = rotate_quarter_turns(forward, q).z;
    if (z > best_z + 1e-12) {
      best_z = z;
      best = q;
    }
  }
  return best;
}

PinholeCamera rotate_camera(const PinholeCamera& cam, int quarter_turns) {
  const Mat3 q = Mat3::from_columns(rotate_quarter_turns(Vec3{1, 0, 0}, quarter_turns),
                                    rotate_quarter_turns(Vec3{0, 1, 0}, quarter_turns),
                                    rotate_quarter_turns(Vec3{0, 0, 1}, quarter_turns));
  PinholeCamera out = cam;
  out.pose.rotation = q * cam.pose.rotation;
  out.pose.translation = q * cam.pose.translation;
  return out;
}

GridSpec place_view_grid(const GridSpec& shape, const PinholeCamera& view_camera,
                         const Aabb& view_room) {
  GridSpec g = shape;
  const Vec3 c = view_camera.position();
  g.origin = {c.x - 0.5 * g.dims.nx * g.voxel_size, view_room.min.y, c.z};
  return quantize_to_f32(g);
}

ViewFrame make_view_frame(const Scene& world_scene, const PinholeCamera& world_camera,
                          const GridSpec& shape) {
  ViewFrame f;
  const int q = facing_quarter_turns(world_camera);
  f.scene = rotate_quarter_turns(world_scene, q);
  f.record.quarter_turns = q;
  f.record.camera = rotate_camera(world_camera, q);
  f.record.room = f.scene.room.box;
  f.record.grid = place_view_grid(shape, f.record.camera, f.record.room);
  return f;
}

std::string camera_to_json(const PinholeCamera& cam) {
  json j = camera_json(cam);
  j["format_version"] = kViewFormatVersion;
  return j.dump(2) + "\n";
}

PinholeCamera camera_from_json(const std::string& text, const std::string& source) {
  return parse_json(text, source, [](const json& j) {
    return json_camera(j.contains("camera") ? j.at("camera") : j);
  });
}

std::string view_to_json(const ViewRecord& v) {
  json j;
  j["format_version"] = kViewFormatVersion;
  j["scene"] = v.scene;
  j["view_index"] = v.view_index;
  j["quarter_turns"] = v.quarter_turns;
  j["camera"] = camera_json(v.camera);
  j["room"] = {{"min", vec_json(v.room.min)}, {"max", vec_json(v.room.max)}};
  j["grid"] = grid_json(v.grid);
  return j.dump(2) + "\n";
}

ViewRecord view_from_json(const std::string& text, const std::string& source) {
  return parse_json(text, source, [](const json& j) {
    ViewRecord v;
    v.scene = j.at("scene").get<std::string>();
    v.view_index = j.at("view_index").get<int>();
    v.quarter_turns = j.at("quarter_turns").get<int>();
    v.camera = json_camera(j.at("camera"));
    v.room = {json_vec(j.at("room").at("min")), json_vec(j.at("room").at("max"))};
    v.grid = json_grid(j.at("grid"));
    return v;
  });
}

ViewRecord load_view(const std::filesystem::path& path) {
  return view_from_json(read_file_text(path), path.string());
}

}  // namespace voxsem::forge
