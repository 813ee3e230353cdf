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
#pragma once

// Scene description shared by the pipeline, the verification oracle and the
// scene file loader. Meshes are stored in world space; shadow casters must be
// closed 2-manifolds.

#include <string>
#include <vector>

#include "sv/hgeom.hpp"
#include "sv/mesh.hpp"

namespace sv {

struct Material {
  Vec3 diffuse{0.8, 0.8, 0.8};
  bool hasSpecular = false;
  Vec3 specular{0.0, 0.0, 0.0};
  double specularExponent = 32.0;
};

struct SceneMesh {
  TriMesh mesh;  // world space
  Material material;
  bool castsShadow = true;
  std::string name;
};

struct LightSource {
  HVec4 position{0.0, 0.0, 0.0, 1.0};  // w = 0 encodes a directional light
  Vec3 color{1.0, 1.0, 1.0};
};

struct Camera {
  Vec3 eye{0.0, 0.0, 5.0};
  Vec3 lookAt{0.0, 0.0, 0.0};
  Vec3 up{0.0, 1.0, 0.0};
  FrustumParams frustum;
};

struct Scene {
  Camera camera;
  Vec3 ambient{0.0, 0.0, 0.0};
  std::vector<SceneMesh> meshes;
  std::vector<LightSource> lights;
};

// Structural checks independent of render modes: at least one mesh, valid
// frustum ranges, light w >= 0, shadow casters pass validate_mesh (throws
// ParamError with the collected issues).
void validate_scene(const Scene& scene);

}  // namespace sv
