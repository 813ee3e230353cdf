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
#include "sv/scene.hpp"

#include <string>

#include "sv/error.hpp"

namespace sv {

void validate_scene(const Scene& scene) {
  validate_frustum(scene.camera.frustum);
  if (scene.meshes.empty()) throw ParamError("scene has no meshes");
  for (std::size_t i = 0; i < scene.lights.size(); ++i) {
    const HVec4& p = scene.lights[i].position;
    const std::string tag = "light " + std::to_string(i);
    if (!(p.w >= 0.0)) throw ParamError(tag + ": w must be >= 0");
    if (p.w == 0.0 && p.x == 0.0 && p.y == 0.0 && p.z == 0.0)
      throw ParamError(tag + ": directional light has zero direction");
  }
  for (const SceneMesh& sm : scene.meshes) {
    const std::string tag =
        "mesh '" + (sm.name.empty() ? std::string("<unnamed>") : sm.name) + "'";
    if (sm.mesh.triangles.empty()) throw ParamError(tag + ": no triangles");
    if (!sm.castsShadow) continue;
    const ValidationReport report = validate_mesh(sm.mesh);
    if (!report.ok()) {
      std::string msg = tag + " cannot cast shadows:";
      for (const std::string& issue : report.issues) msg += " " + issue + ";";
      throw ParamError(msg);
    }
  }
}

}  // namespace sv
