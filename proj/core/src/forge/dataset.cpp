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

#include "voxsem/forge/dataset.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

#include "voxsem/common/error.hpp"
#include "voxsem/common/file_io.hpp"
#include "voxsem/common/png_io.hpp"
#include "voxsem/common/rng.hpp"
#include "voxsem/volume/voxb.hpp"

namespace voxsem::forge {

using nlohmann::json;

namespace {

constexpr int kManifestFormatVersion = 1;

std::string scene_id(int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "scene_%04d", i);
  return buf;
}

}  // namespace

std::string manifest_to_json(const Manifest& m) {
  json j;
  j["format_version"] = kManifestFormatVersion;
  j["grid"] = {{"voxel_size", m.grid.voxel_size},
               {"dims", json::array({m.grid.dims.nx, m.grid.dims.ny, m.grid.dims.nz})}};
  j["d_max"] = m.d_max;
  j["samples"] = json::array();
  for (const auto& s : m.samples) {
    j["samples"].push_back({{"tsdf", s.tsdf},
                            {"labels", s.labels},
                            {"states", s.states},
                            {"depth", s.depth},
                            {"view", s.view}});
  }
  return j.dump(2) + "\n";
}

Manifest manifest_from_json(const std::string& text, const std::string& source) {
  try {
    const json j = json::parse(text);
    if (!j.contains("format_version") ||
        j["format_version"].get<int>() != kManifestFormatVersion) {
      throw ValidationError(source + ": unsupported manifest format_version");
    }
    Manifest m;
    m.grid.voxel_size = j.at("grid").at("voxel_size").get<double>();
    const json& d = j.at("grid").at("dims");
    m.grid.dims = {d.at(0).get<int>(), d.at(1).get<int>(), d.at(2).get<int>()};
    m.grid.validate();
    m.d_max = j.at("d_max").get<double>();
    if (!(m.d_max > 0.0)) throw ValidationError(source + ": d_max must be positive");
    for (const auto& s : j.at("samples")) {
      m.samples.push_back({s.at("tsdf").get<std::string>(), s.at("labels").get<std::string>(),
                           s.at("states").get<std::string>(), s.at("depth").get<std::string>(),
                           s.at("view").get<std::string>()});
    }
    return m;
  } catch (const json::exception& e) {
    throw ValidationError(source + ": " + e.what());
  }
}

Manifest read_manifest(const std::filesystem::path& path) {
  Manifest m = manifest_from_json(read_file_text(path), path.string());
  m.base_dir = path.parent_path();
  return m;
}

void write_manifest(const std::filesystem::path& path, const Manifest& m) {
  write_file_atomic(path, manifest_to_json(m));
}

RenderedView render_view(const Scene& world_scene, const PinholeCamera& world_camera,
                         const GridSpec& shape, const VoxelizationLibrary& voxelizations) {
  ViewFrame frame = make_view_frame(world_scene, world_camera, shape);
  RenderedView v;
  v.record = frame.record;
  v.depth = quantize_depth_mm(render_depth(frame.scene, frame.record.camera));
  v.labels = compose_scene_labels(frame.scene, voxelizations, frame.record.grid);
  v.states = classify_voxels(v.depth, frame.record.camera, frame.record.grid,
                             frame.record.room);
  return v;
}

ForgeSummary forge_dataset(const ForgeConfig& config) {
  if (config.scenes < 0) throw ValidationError("scene count must be >= 0");
  if (config.views_per_scene < 1) throw ValidationError("views per scene must be >= 1");
  namespace fs = std::filesystem;
  const fs::path scenes_dir = config.out_dir / "scenes";
  const fs::path views_dir = config.out_dir / "views";
  std::error_code ec;
  fs::create_directories(scenes_dir, ec);
  fs::create_directories(views_dir, ec);
  if (ec || !fs::is_directory(views_dir)) {
    throw IoError("cannot create output directory " + config.out_dir.string());
  }

  const GridSpec shape = preset_grid(config.scale);
  Manifest manifest;
  manifest.grid = shape;
  manifest.d_max = config.d_max;
  ForgeSummary summary;

  for (int i = 0; i < config.scenes; ++i) {
    const std::string id = scene_id(i);
    Scene scene;
    bool generated = false;
    std::string last_error;
    for (int attempt = 0; attempt <= config.scene_retries && !generated; ++attempt) {
      const std::uint64_t s = attempt == 0
                                  ? stream_seed(config.seed, "scene", i)
                                  : stream_seed(stream_seed(config.seed, "scene", i),
                                                "retry", attempt);
      try {
        scene = generate_scene(config.scene_params, s);
        generated = true;
      } catch (const ValidationError& e) {
        last_error = e.what();
      }
    }
    if (!generated) throw ValidationError(id + ": " + last_error);
    ++summary.scenes;
    write_file_atomic(scenes_dir / (id + ".json"), scene_to_json(scene));

    const CameraSampling sampling = sample_cameras_detailed(
        scene, stream_seed(config.seed, "camera", i), config.views_per_scene,
        config.camera_params);
    json cams = json::array();
    for (const auto& c : sampling.cameras) cams.push_back(json::parse(camera_to_json(c)));
    write_file_atomic(scenes_dir / (id + ".cameras.json"),
                      json{{"format_version", 1}, {"scene", id}, {"cameras", cams}}.dump(2) +
                          "\n");
    if (sampling.cameras.empty()) {
      ++summary.scenes_without_views;
      continue;
    }

    const VoxelizationLibrary vox = voxelize_scene_meshes(scene);
    for (std::size_t k = 0; k < sampling.cameras.size(); ++k) {
      const std::string name = id + "_v" + std::to_string(k);
      RenderedView v = render_view(scene, sampling.cameras[k], shape, vox);
      v.record.scene = id;
      v.record.view_index = static_cast<int>(k);

      ManifestSample sample{"views/" + name + ".tsdf.voxb", "views/" + name + ".labels.voxb",
                            "views/" + name + ".states.voxb", "views/" + name + ".depth.png",
                            "views/" + name + ".json"};
      write_file_atomic(config.out_dir / sample.view, view_to_json(v.record));
      write_depth_png(config.out_dir / sample.depth, v.depth);
      write_file_atomic(config.out_dir / sample.labels, encode_voxb(v.labels));
      write_file_atomic(config.out_dir / sample.states, encode_voxb(v.states));
      manifest.samples.push_back(sample);

      ForgedView fv;
      fv.name = name;
      for (const auto& d : sampling.draws) {
        if (d.report.valid() && d.position == sampling.cameras[k].position()) fv.report = d.report;
      }
      summary.views.push_back(fv);
    }
  }
  summary.manifest_path = config.out_dir / "manifest.json";
  write_manifest(summary.manifest_path, manifest);
  return summary;
}

}  // namespace voxsem::forge
