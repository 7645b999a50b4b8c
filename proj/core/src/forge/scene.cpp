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

#include "voxsem/forge/scene.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <nlohmann/json.hpp>

#include "voxsem/common/error.hpp"
#include "voxsem/common/rng.hpp"

namespace voxsem::forge {

using nlohmann::json;

namespace {

bool quarter_multiple(double degrees, int& q) {
  const double turns = degrees / 90.0;
  const double r = std::round(turns);
  if (std::abs(turns - r) > 1e-12) return false;
  q = ((static_cast<int>(r) % 4) + 4) % 4;
  return true;
}

Mat3 exact_quarter_rotation(int q) {
  switch (((q % 4) + 4) % 4) {
    case 0: return Mat3::identity();
    case 1: return Mat3{{0, 0, 1, 0, 1, 0, -1, 0, 0}};
    case 2: return Mat3{{-1, 0, 0, 0, 1, 0, 0, 0, -1}};
    default: return Mat3{{0, 0, -1, 0, 1, 0, 1, 0, 0}};
  }
}

TriMesh boxes(std::initializer_list<std::pair<Vec3, Vec3>> parts) {
  TriMesh m;
  for (const auto& [lo, hi] : parts) m.append(make_box(lo, hi));
  return m;
}

std::map<std::string, TriMesh, std::less<>> build_library() {
  std::map<std::string, TriMesh, std::less<>> lib;
  // Low box with a headboard at the back.
  lib["bed"] = boxes({{{-1.0, 0.0, -0.8}, {1.0, 0.5, 0.8}},
                      {{-1.0, 0.5, -0.8}, {1.0, 1.0, -0.68}}});
  // Slab on four legs.
  lib["table"] = boxes({{{-0.6, 0.70, -0.4}, {0.6, 0.78, 0.4}},
                        {{-0.56, 0.0, -0.36}, {-0.48, 0.70, -0.28}},
                        {{0.48, 0.0, -0.36}, {0.56, 0.70, -0.28}},
                        {{-0.56, 0.0, 0.28}, {-0.48, 0.70, 0.36}},
                        {{0.48, 0.0, 0.28}, {0.56, 0.70, 0.36}}});
  // Seat, back and legs.
  lib["chair"] = boxes({{{-0.25, 0.42, -0.25}, {0.25, 0.50, 0.25}},
                        {{-0.25, 0.50, -0.25}, {0.25, 0.95, -0.17}},
                        {{-0.25, 0.0, -0.25}, {-0.19, 0.42, -0.19}},
                        {{0.19, 0.0, -0.25}, {0.25, 0.42, -0.19}},
                        {{-0.25, 0.0, 0.19}, {-0.19, 0.42, 0.25}},
                        {{0.19, 0.0, 0.19}, {0.25, 0.42, 0.25}}});
  // Base box with back and two arms.
  lib["sofa"] = boxes({{{-1.0, 0.0, -0.45}, {1.0, 0.45, 0.45}},
                       {{-1.0, 0.45, -0.45}, {1.0, 0.85, -0.23}},
                       {{-1.0, 0.45, -0.23}, {-0.8, 0.65, 0.45}},
                       {{0.8, 0.45, -0.23}, {1.0, 0.65, 0.45}}});
  // Thin panel.
  lib["tv"] = boxes({{{-0.5, 0.0, -0.06}, {0.5, 0.6, 0.06}}});
  // Tall cabinet.
  lib["furniture"] = boxes({{{-0.5, 0.0, -0.25}, {0.5, 1.8, 0.25}}});
  // Small box.
  lib["object"] = boxes({{{-0.15, 0.0, -0.15}, {0.15, 0.3, 0.15}}});
  return lib;
}

const std::map<std::string, TriMesh, std::less<>>& library() {
  static const auto lib = build_library();
  return lib;
}

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from(const json& j, const std::string& source, const char* what) {
  if (!j.is_array() || j.size() != 3) {
    throw ValidationError(source + ": field '" + what + "' must be a 3-vector");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::string describe(const SceneObject& o, std::size_t index) {
  return "object " + std::to_string(index) + " (" + o.mesh_id + ")";
}

}  // namespace

Mat3 SimilarityTransform::rotation() const {
  int q = 0;
  if (quarter_multiple(yaw_degrees, q)) return exact_quarter_rotation(q);
  return Mat3::rotation_y(yaw_degrees * std::numbers::pi / 180.0);
}

Vec3 SimilarityTransform::apply(const Vec3& p) const {
  return rotation() * hadamard(scale, p) + translation;
}

Vec3 SimilarityTransform::apply_inverse(const Vec3& p) const {
  const Vec3 local = rotation().transposed() * (p - translation);
  return {local.x / scale.x, local.y / scale.y, local.z / scale.z};
}

double SimilarityTransform::max_scale() const {
  return std::max({scale.x, scale.y, scale.z});
}

const TriMesh& library_mesh(std::string_view mesh_id) {
  const auto& lib = library();
  auto it = lib.find(mesh_id);
  if (it == lib.end()) {
    throw ValidationError("unknown mesh id '" + std::string(mesh_id) + "'");
  }
  return it->second;
}

const std::vector<std::string>& library_mesh_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [k, _] : library()) out.push_back(k);
    return out;
  }();
  return ids;
}

Category library_category(std::string_view mesh_id) {
  if (mesh_id == "bed") return Category::Bed;
  if (mesh_id == "table") return Category::Table;
  if (mesh_id == "chair") return Category::Chair;
  if (mesh_id == "sofa") return Category::Sofa;
  if (mesh_id == "tv") return Category::Tvs;
  if (mesh_id == "furniture") return Category::Furniture;
  if (mesh_id == "object") return Category::Objects;
  throw ValidationError("unknown mesh id '" + std::string(mesh_id) + "'");
}

Aabb object_bounds(const SceneObject& obj) {
  const Aabb local = library_mesh(obj.mesh_id).bounds();
  Aabb world = Aabb::empty();
  for (int c = 0; c < 8; ++c) {
    world.expand(obj.transform.apply({(c & 1) ? local.max.x : local.min.x,
                                      (c & 2) ? local.max.y : local.min.y,
                                      (c & 4) ? local.max.z : local.min.z}));
  }
  return world;
}

TriMesh transformed_mesh(const SceneObject& obj) {
  TriMesh m = library_mesh(obj.mesh_id);
  for (auto& v : m.vertices) v = obj.transform.apply(v);
  return m;
}

void Scene::validate() const {
  const Vec3 ext = room.box.extent();
  if (!(ext.x > 0.0 && ext.y > 0.0 && ext.z > 0.0)) {
    throw ValidationError("room box must have positive extent");
  }
  constexpr double kTol = 1e-9;
  std::vector<Aabb> bounds;
  bounds.reserve(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const auto& o = objects[i];
    if (o.category == Category::Empty ||
        label_of(o.category) >= kNumClasses) {
      throw ValidationError(describe(o, i) + " has an invalid category");
    }
    const auto& s = o.transform.scale;
    if (!(s.x > 0.0 && s.y > 0.0 && s.z > 0.0)) {
      throw ValidationError(describe(o, i) + " has a non-positive scale");
    }
    const Aabb b = object_bounds(o);
    if (b.min.x < room.box.min.x - kTol || b.min.y < room.box.min.y - kTol ||
        b.min.z < room.box.min.z - kTol || b.max.x > room.box.max.x + kTol ||
        b.max.y > room.box.max.y + kTol || b.max.z > room.box.max.z + kTol) {
      throw ValidationError(describe(o, i) + " extends outside the room");
    }
    for (std::size_t j = 0; j < bounds.size(); ++j) {
      if (b.overlaps(bounds[j])) {
        throw ValidationError(describe(o, i) + " overlaps " +
                              describe(objects[j], j));
      }
    }
    bounds.push_back(b);
  }
}

SceneParams SceneParams::defaults() {
  SceneParams p;
  auto set = [&p](Category c, int lo, int hi) { p.counts[label_of(c)] = {lo, hi}; };
  set(Category::Window, 1, 2);
  set(Category::Bed, 1, 1);
  set(Category::Sofa, 1, 1);
  set(Category::Furniture, 2, 4);
  set(Category::Table, 1, 2);
  set(Category::Chair, 2, 4);
  set(Category::Tvs, 1, 1);
  set(Category::Objects, 3, 6);
  return p;
}

SceneParams SceneParams::shell_only() { return SceneParams{}; }

namespace {

class Placer {
 public:
  Placer(const SceneParams& params, Rng& rng, Scene& scene)
      : params_(params), rng_(rng), scene_(scene) {}

  void place(Category category, int count) {
    for (int n = 0; n < count; ++n) {
      bool placed = false;
      for (int attempt = 0; attempt < params_.max_attempts && !placed; ++attempt) {
        placed = try_place(category);
      }
      if (!placed) {
        throw ValidationError("placement failed for category '" +
                              std::string(kCategoryNames[label_of(category)]) +
                              "' after " + std::to_string(params_.max_attempts) +
                              " attempts");
      }
    }
  }

  void place_windows(int count) {
    const Aabb& r = scene_.room.box;
    for (int n = 0; n < count; ++n) {
      const int wall = rng_.uniform_int(0, 3);
      const bool along_x = wall >= 2;  // walls 2, 3 are the z = const planes
      const double len = along_x ? r.extent().x : r.extent().z;
      const double w = std::min(rng_.uniform(0.8, 1.6), len - 0.4);
      const double start = rng_.uniform(0.2, len - 0.2 - w);
      const double y0 = r.min.y + rng_.uniform(0.85, 1.05);
      const double y1 = std::min(r.max.y - 0.15, y0 + rng_.uniform(0.9, 1.3));
      Aabb win;
      if (along_x) {
        const double z = wall == 2 ? r.min.z : r.max.z;
        win = {{r.min.x + start, y0, z}, {r.min.x + start + w, y1, z}};
      } else {
        const double x = wall == 0 ? r.min.x : r.max.x;
        win = {{x, y0, r.min.z + start}, {x, y1, r.min.z + start + w}};
      }
      scene_.room.windows.push_back(win);
    }
  }

 private:
  Vec3 jitter_scale() {
    const double j = params_.scale_jitter;
    return {rng_.uniform(1.0 - j, 1.0 + j), rng_.uniform(1.0 - j, 1.0 + j),
            rng_.uniform(1.0 - j, 1.0 + j)};
  }

  bool fits(const SceneObject& o) const {
    const Aabb b = object_bounds(o);
    const Aabb& r = scene_.room.box;
    if (b.min.x < r.min.x || b.min.z < r.min.z || b.max.x > r.max.x ||
        b.max.z > r.max.z || b.min.y < r.min.y || b.max.y > r.max.y) {
      return false;
    }
    for (const auto& other : scene_.objects) {
      if (b.overlaps(object_bounds(other))) return false;
    }
    return true;
  }

  bool commit(SceneObject o) {
    if (!fits(o)) return false;
    scene_.objects.push_back(std::move(o));
    return true;
  }

  // Back of the object flush against a random wall.
  bool place_against_wall(SceneObject o) {
    const Aabb& r = scene_.room.box;
    const int wall = rng_.uniform_int(0, 3);
    static constexpr double kYaw[4] = {90.0, 270.0, 0.0, 180.0};
    o.transform.yaw_degrees = kYaw[wall];
    o.transform.translation = {};
    const Aabb b = object_bounds(o);  // centered at the origin in x/z
    const double gap = 0.02;
    Vec3 t{0.0, r.min.y, 0.0};
    if (wall < 2) {
      t.x = wall == 0 ? r.min.x + gap - b.min.x : r.max.x - gap - b.max.x;
      t.z = rng_.uniform(r.min.z - b.min.z, r.max.z - b.max.z);
    } else {
      t.z = wall == 2 ? r.min.z + gap - b.min.z : r.max.z - gap - b.max.z;
      t.x = rng_.uniform(r.min.x - b.min.x, r.max.x - b.max.x);
    }
    o.transform.translation = t;
    return commit(std::move(o));
  }

  bool place_free(SceneObject o) {
    const Aabb& r = scene_.room.box;
    o.transform.yaw_degrees = 90.0 * rng_.uniform_int(0, 3);
    o.transform.translation = {};
    const Aabb b = object_bounds(o);
    o.transform.translation = {rng_.uniform(r.min.x - b.min.x, r.max.x - b.max.x),
                               r.min.y,
                               rng_.uniform(r.min.z - b.min.z, r.max.z - b.max.z)};
    return commit(std::move(o));
  }

  bool place_on_host(SceneObject o, std::initializer_list<Category> hosts) {
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < scene_.objects.size(); ++i) {
      for (Category h : hosts) {
        if (scene_.objects[i].category == h) candidates.push_back(i);
      }
    }
    if (candidates.empty()) return false;
    const auto& host = scene_.objects[candidates[rng_.below(candidates.size())]];
    const Aabb hb = object_bounds(host);
    o.transform.yaw_degrees = host.transform.yaw_degrees;
    o.transform.translation = {};
    const Aabb b = object_bounds(o);
    if (b.extent().x > hb.extent().x || b.extent().z > hb.extent().z) {
      return false;
    }
    o.transform.translation = {rng_.uniform(hb.min.x - b.min.x, hb.max.x - b.max.x),
                               hb.max.y,
                               rng_.uniform(hb.min.z - b.min.z, hb.max.z - b.max.z)};
    return commit(std::move(o));
  }

  bool try_place(Category c) {
    SceneObject o;
    o.category = c;
    o.transform.scale = jitter_scale();
    switch (c) {
      case Category::Bed: o.mesh_id = "bed"; return place_against_wall(o);
      case Category::Sofa: o.mesh_id = "sofa"; return place_against_wall(o);
      case Category::Furniture: o.mesh_id = "furniture"; return place_against_wall(o);
      case Category::Table: o.mesh_id = "table"; return place_free(o);
      case Category::Chair: o.mesh_id = "chair"; return place_free(o);
      case Category::Tvs:
        o.mesh_id = "tv";
        return place_on_host(o, {Category::Furniture, Category::Table});
      case Category::Objects:
        o.mesh_id = "object";
        if (rng_.uniform() < 0.5 &&
            place_on_host(o, {Category::Table, Category::Bed, Category::Sofa})) {
          return true;
        }
        return place_free(o);
      default:
        throw ValidationError("category '" +
                              std::string(kCategoryNames[label_of(c)]) +
                              "' cannot be placed as an object");
    }
  }

  const SceneParams& params_;
  Rng& rng_;
  Scene& scene_;
};

}  // namespace

Scene generate_scene(const SceneParams& params, std::uint64_t seed) {
  Rng rng(seed);
  Scene scene;
  const double w = rng.uniform(params.width_min, params.width_max);
  const double d = rng.uniform(params.depth_min, params.depth_max);
  const double h = rng.uniform(params.height_min, params.height_max);
  scene.room.box = {{0.0, 0.0, 0.0}, {w, h, d}};

  auto count = [&](Category c) {
    const auto& r = params.counts[label_of(c)];
    return rng.uniform_int(r.min, std::max(r.min, r.max));
  };
  Placer placer(params, rng, scene);
  placer.place_windows(count(Category::Window));
  for (Category c : {Category::Bed, Category::Sofa, Category::Furniture,
                     Category::Table, Category::Chair, Category::Tvs,
                     Category::Objects}) {
    placer.place(c, count(c));
  }
  return scene;
}

Vec3 rotate_quarter_turns(const Vec3& p, int q) {
  return exact_quarter_rotation(q) * p;
}

Scene rotate_quarter_turns(const Scene& scene, int q) {
  q = ((q % 4) + 4) % 4;
  auto rotate_box = [q](const Aabb& b) {
    Aabb out = Aabb::empty();
    out.expand(rotate_quarter_turns(b.min, q));
    out.expand(rotate_quarter_turns(b.max, q));
    return out;
  };
  Scene out;
  out.room.box = rotate_box(scene.room.box);
  for (const auto& w : scene.room.windows) out.room.windows.push_back(rotate_box(w));
  for (auto o : scene.objects) {
    o.transform.yaw_degrees = std::fmod(o.transform.yaw_degrees + 90.0 * q, 360.0);
    o.transform.translation = rotate_quarter_turns(o.transform.translation, q);
    out.objects.push_back(std::move(o));
  }
  return out;
}

std::string scene_to_json(const Scene& scene) {
  json j;
  j["format_version"] = 1;
  json room;
  room["min"] = vec_json(scene.room.box.min);
  room["max"] = vec_json(scene.room.box.max);
  room["windows"] = json::array();
  for (const auto& w : scene.room.windows) {
    room["windows"].push_back({{"min", vec_json(w.min)}, {"max", vec_json(w.max)}});
  }
  j["room"] = room;
  j["objects"] = json::array();
  for (const auto& o : scene.objects) {
    j["objects"].push_back({{"mesh_id", o.mesh_id},
                            {"category", label_of(o.category)},
                            {"yaw_degrees", o.transform.yaw_degrees},
                            {"scale", vec_json(o.transform.scale)},
                            {"translation", vec_json(o.transform.translation)}});
  }
  return j.dump(2) + "\n";
}

Scene scene_from_json(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(source + ": invalid JSON: " + e.what());
  }
  try {
    if (j.value("format_version", 0) != 1) {
      throw ValidationError(source + ": unsupported scene format_version");
    }
    Scene s;
    s.room.box = {vec_from(j.at("room").at("min"), source, "room.min"),
                  vec_from(j.at("room").at("max"), source, "room.max")};
    for (const auto& w : j.at("room").value("windows", json::array())) {
      s.room.windows.push_back({vec_from(w.at("min"), source, "window.min"),
                                vec_from(w.at("max"), source, "window.max")});
    }
    for (const auto& o : j.at("objects")) {
      SceneObject obj;
      obj.mesh_id = o.at("mesh_id").get<std::string>();
      library_mesh(obj.mesh_id);
      const int cat = o.at("category").get<int>();
      if (cat <= 0 || cat >= kNumClasses) {
        throw ValidationError(source + ": object category out of range");
      }
      obj.category = static_cast<Category>(cat);
      obj.transform.yaw_degrees = o.at("yaw_degrees").get<double>();
      obj.transform.scale = vec_from(o.at("scale"), source, "scale");
      obj.transform.translation = vec_from(o.at("translation"), source, "translation");
      s.objects.push_back(std::move(obj));
    }
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw ValidationError(source + ": malformed scene: " + e.what());
  }
}

}  // namespace voxsem::forge
