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
#include <string>
#include <vector>

#include "voxsem/forge/cameras.hpp"
#include "voxsem/forge/labels.hpp"
#include "voxsem/forge/scene.hpp"
#include "voxsem/forge/view.hpp"
#include "voxsem/volume/grid.hpp"
#include "voxsem/volume/visibility.hpp"

namespace voxsem::forge {

/// Paths are relative to the manifest's directory.
struct ManifestSample {
  std::string tsdf;
  std::string labels;
  std::string states;
  std::string depth;
  std::string view;
  bool operator==(const ManifestSample&) const = default;
};

struct Manifest {
  /// Shape shared by every sample grid; the origin is per view.
  GridSpec grid;
  double d_max = 0.24;
  std::vector<ManifestSample> samples;
  /// Directory the manifest was read from; not serialized.
  std::filesystem::path base_dir;

  std::filesystem::path resolve(const std::string& rel) const { return base_dir / rel; }
};

std::string manifest_to_json(const Manifest& m);
Manifest manifest_from_json(const std::string& text, const std::string& source);
Manifest read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const Manifest& m);

struct ForgeConfig {
  std::filesystem::path out_dir;
  std::uint64_t seed = 0;
  int scenes = 1;
  int views_per_scene = 5;
  ScalePreset scale = ScalePreset::Full;
  double d_max = 0.24;
  SceneParams scene_params = SceneParams::defaults();
  CameraSamplerParams camera_params;
  /// Fresh layouts tried when generation fails for a scene slot.
  int scene_retries = 8;
};

struct ForgedView {
  std::string name;
  ValidityReport report;
};

struct ForgeSummary {
  std::filesystem::path manifest_path;
  int scenes = 0;
  int scenes_without_views = 0;
  std::vector<ForgedView> views;
};

/// Writes, per scene, `scenes/<id>.json` and `scenes/<id>.cameras.json`,
/// and per view `views/<id>_v<k>.{json,depth.png,labels.voxb,states.voxb}`,
/// then `manifest.json`. The TSDF path recorded for each sample is filled
/// in later by the encoder.
ForgeSummary forge_dataset(const ForgeConfig& config);

struct RenderedView {
  ViewRecord record;
  DepthMap depth;
  VoxelGrid<std::uint8_t> labels;
  VoxelGrid<VoxelState> states;
};

/// Ground truth for one world-space camera: view framing, the mm-quantized
/// depth map, labels and visibility states on the placed grid.
RenderedView render_view(const Scene& world_scene, const PinholeCamera& world_camera,
                         const GridSpec& shape, const VoxelizationLibrary& voxelizations);

}  // namespace voxsem::forge
