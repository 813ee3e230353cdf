/*******************************************************************************
 * Copyright 2026 SVRender Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *******************************************************************************/
#include "sv/scene_json.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>

#include <json.hpp>

#include "sv/error.hpp"
#include "sv/obj_io.hpp"
#include "sv/primitives.hpp"

namespace sv {
namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
  throw ParamError(where + ": " + msg);
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool known = false;
    for (const char* a : allowed)
      if (key == a) {
        known = true;
        break;
      }
    if (!known) fail(where, "unknown key '" + key + "'");
  }
}

double get_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "expected a finite number");
  return v;
}

double get_member_number(const json& obj, const char* key,
                         const std::string& where) {
  if (!obj.contains(key)) fail(where, std::string("missing '") + key + "'");
  return get_number(obj.at(key), where + "." + key);
}

Vec3 get_vec3(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) fail(where, std::string("missing '") + key + "'");
  const json& a = obj.at(key);
  const std::string w = where + "." + key;
  if (!a.is_array() || a.size() != 3) fail(w, "expected an array of 3 numbers");
  return {get_number(a[0], w), get_number(a[1], w), get_number(a[2], w)};
}

HVec4 get_vec4(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) fail(where, std::string("missing '") + key + "'");
  const json& a = obj.at(key);
  const std::string w = where + "." + key;
  if (!a.is_array() || a.size() != 4) fail(w, "expected an array of 4 numbers");
  return {get_number(a[0], w), get_number(a[1], w), get_number(a[2], w),
          get_number(a[3], w)};
}

Camera parse_camera(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  reject_unknown_keys(j, where,
                      {"eye", "lookAt", "up", "fovYDegrees", "aspect", "near",
                       "far"});
  Camera cam;
  cam.eye = get_vec3(j, "eye", where);
  cam.lookAt = get_vec3(j, "lookAt", where);
  cam.up = get_vec3(j, "up", where);
  cam.frustum.fovY = get_member_number(j, "fovYDegrees", where) * kPi / 180.0;
  cam.frustum.aspect = get_member_number(j, "aspect", where);
  cam.frustum.near = get_member_number(j, "near", where);
  if (!j.contains("far")) fail(where, "missing 'far'");
  const json& far = j.at("far");
  if (far.is_string()) {
    if (far.get<std::string>() != "infinite")
      fail(where + ".far", "expected a number or \"infinite\"");
    cam.frustum.far = FrustumParams::kInfiniteFar;
  } else {
    cam.frustum.far = get_number(far, where + ".far");
  }
  return cam;
}

TriMesh parse_primitive(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  reject_unknown_keys(j, where,
                      {"type", "subdivisions", "halfExtents", "thickness"});
  if (!j.contains("type") || !j.at("type").is_string())
    fail(where, "missing string 'type'");
  const std::string type = j.at("type").get<std::string>();
  const auto forbid = [&](const char* key, const char* reason) {
    if (j.contains(key))
      fail(where, std::string("'") + key + "' only applies to " + reason);
  };
  if (type == "tetrahedron" || type == "cube" || type == "plane") {
    forbid("subdivisions", "icosphere");
    forbid("halfExtents", "openbox");
    forbid("thickness", "openbox");
    if (type == "tetrahedron") return unit_tetrahedron();
    if (type == "cube") return unit_cube();
    return unit_plane();
  }
  if (type == "icosphere") {
    forbid("halfExtents", "openbox");
    forbid("thickness", "openbox");
    int sub = 2;
    if (j.contains("subdivisions")) {
      const double v = get_number(j.at("subdivisions"), where + ".subdivisions");
      sub = static_cast<int>(v);
      if (static_cast<double>(sub) != v)
        fail(where + ".subdivisions", "expected an integer");
    }
    return icosphere(sub);
  }
  if (type == "openbox") {
    forbid("subdivisions", "icosphere");
    const Vec3 he = get_vec3(j, "halfExtents", where);
    const double t = get_member_number(j, "thickness", where);
    return open_box(he.x, he.y, he.z, t);
  }
  fail(where, "unknown primitive type '" + type + "'");
}

HMat4 parse_transform(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of transform steps");
  HMat4 m = HMat4::identity();
  int idx = 0;
  for (const json& step : j) {
    const std::string w = where + "[" + std::to_string(idx++) + "]";
    if (!step.is_object() || step.size() != 1)
      fail(w, "expected an object with exactly one key");
    HMat4 s;
    if (step.contains("translate"))
      s = mat_translate(get_vec3(step, "translate", w));
    else if (step.contains("scale"))
      s = mat_scale(get_vec3(step, "scale", w));
    else if (step.contains("rotateXDegrees"))
      s = mat_rotate_x(get_member_number(step, "rotateXDegrees", w) * kPi / 180.0);
    else if (step.contains("rotateYDegrees"))
      s = mat_rotate_y(get_member_number(step, "rotateYDegrees", w) * kPi / 180.0);
    else if (step.contains("rotateZDegrees"))
      s = mat_rotate_z(get_member_number(step, "rotateZDegrees", w) * kPi / 180.0);
    else
      fail(w, "unknown transform step");
    m = s * m;  // listed first, applied first
  }
  return m;
}

Material parse_material(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  reject_unknown_keys(j, where, {"diffuse", "specular", "specularExponent"});
  Material mat;
  if (j.contains("diffuse")) mat.diffuse = get_vec3(j, "diffuse", where);
  if (j.contains("specular")) {
    mat.hasSpecular = true;
    mat.specular = get_vec3(j, "specular", where);
    if (j.contains("specularExponent")) {
      mat.specularExponent = get_member_number(j, "specularExponent", where);
      if (!(mat.specularExponent > 0.0))
        fail(where + ".specularExponent", "must be positive");
    }
  } else if (j.contains("specularExponent")) {
    fail(where, "'specularExponent' without 'specular'");
  }
  return mat;
}

SceneMesh parse_mesh(const json& j, const std::string& where,
                     const std::string& baseDir) {
  if (!j.is_object()) fail(where, "expected an object");
  reject_unknown_keys(
      j, where, {"name", "primitive", "obj", "transform", "material",
                 "castsShadow"});
  SceneMesh sm;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) fail(where + ".name", "expected a string");
    sm.name = j.at("name").get<std::string>();
  }
  const bool hasPrim = j.contains("primitive");
  const bool hasObj = j.contains("obj");
  if (hasPrim == hasObj)
    fail(where, "need exactly one of 'primitive' and 'obj'");
  if (hasPrim) {
    sm.mesh = parse_primitive(j.at("primitive"), where + ".primitive");
  } else {
    if (!j.at("obj").is_string()) fail(where + ".obj", "expected a string");
    std::filesystem::path p = j.at("obj").get<std::string>();
    if (p.is_relative() && !baseDir.empty())
      p = std::filesystem::path(baseDir) / p;
    sm.mesh = load_obj_file(p.string());
  }
  if (j.contains("transform"))
    sm.mesh = transform_mesh(sm.mesh,
                             parse_transform(j.at("transform"),
                                             where + ".transform"));
  if (j.contains("material"))
    sm.material = parse_material(j.at("material"), where + ".material");
  if (j.contains("castsShadow")) {
    if (!j.at("castsShadow").is_boolean())
      fail(where + ".castsShadow", "expected a boolean");
    sm.castsShadow = j.at("castsShadow").get<bool>();
  }
  return sm;
}

}  // namespace

Scene load_scene_json(std::istream& in, const std::string& baseDir,
                      const std::string& label) {
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(label + ": " + e.what());
  }
  const std::string where = label;
  if (!root.is_object()) fail(where, "top level must be an object");
  reject_unknown_keys(root, where, {"camera", "ambient", "lights", "meshes"});
  Scene scene;
  if (!root.contains("camera")) fail(where, "missing 'camera'");
  scene.camera = parse_camera(root.at("camera"), where + ".camera");
  if (root.contains("ambient"))
    scene.ambient = get_vec3(root, "ambient", where);
  if (root.contains("lights")) {
    const json& lights = root.at("lights");
    if (!lights.is_array()) fail(where + ".lights", "expected an array");
    int idx = 0;
    for (const json& lj : lights) {
      const std::string w = where + ".lights[" + std::to_string(idx++) + "]";
      if (!lj.is_object()) fail(w, "expected an object");
      reject_unknown_keys(lj, w, {"position", "color"});
      LightSource l;
      l.position = get_vec4(lj, "position", w);
      if (lj.contains("color")) l.color = get_vec3(lj, "color", w);
      scene.lights.push_back(l);
    }
  }
  if (!root.contains("meshes")) fail(where, "missing 'meshes'");
  const json& meshes = root.at("meshes");
  if (!meshes.is_array()) fail(where + ".meshes", "expected an array");
  int idx = 0;
  for (const json& mj : meshes)
    scene.meshes.push_back(parse_mesh(
        mj, where + ".meshes[" + std::to_string(idx++) + "]", baseDir));
  validate_scene(scene);
  return scene;
}

Scene load_scene_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scene file '" + path + "'");
  const std::string baseDir = std::filesystem::path(path).parent_path().string();
  return load_scene_json(in, baseDir, path);
}

}  // namespace sv
