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

#include <filesystem>
#include <string>

#include "voxsem/forge/scene.hpp"
#include "voxsem/volume/camera.hpp"
#include "voxsem/volume/grid.hpp"

namespace voxsem::forge {

enum class ScalePreset { Full, Toy };

const char* to_string(ScalePreset s);
ScalePreset parse_scale_preset(const std::string& name);

/// Grid shape and voxel size of a preset; the origin is zero.
GridSpec preset_grid(ScalePreset s);

/// One rendered view expressed in its view frame: the scene rotated by
/// quarter turns about the vertical axis so the camera looks roughly along
/// +z. The grid is centered on the camera in x, rests on the floor and
/// starts at the camera in z.
struct ViewRecord {
  std::string scene;
  int view_index = 0;
  int quarter_turns = 0;
  PinholeCamera camera;
  Aabb room;
  GridSpec grid;
};

/// Quarter turn count that best aligns the camera's forward axis with +z.
int facing_quarter_turns(const PinholeCamera& world_camera);

PinholeCamera rotate_camera(const PinholeCamera& cam, int quarter_turns);

/// Places `shape` (dims and voxel size) in the view frame of the camera.
GridSpec place_view_grid(const GridSpec& shape, const PinholeCamera& view_camera,
                         const Aabb& view_room);

struct ViewFrame {
  Scene scene;
  ViewRecord record;
};

ViewFrame make_view_frame(const Scene& world_scene,
                          const PinholeCamera& world_camera,
                          const GridSpec& shape);

std::string camera_to_json(const PinholeCamera& cam);
PinholeCamera camera_from_json(const std::string& text, const std::string& source);

std::string view_to_json(const ViewRecord& v);
ViewRecord view_from_json(const std::string& text, const std::string& source);
ViewRecord load_view(const std::filesystem::path& path);

}  // namespace voxsem::forge
