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

// JSON scene files. Schema:
//
// {
//   "camera": {
//     "eye": [x, y, z], "lookAt": [x, y, z], "up": [x, y, z],
//     "fovYDegrees": 55.0, "aspect": 1.0, "near": 0.1,
//     "far": 100.0 | "infinite"
//   },
//   "ambient": [r, g, b],                       // optional, default black
//   "lights": [
//     {"position": [x, y, z, w], "color": [r, g, b]}   // w = 0: directional
//   ],
//   "meshes": [
//     {
//       "name": "occluder",                     // optional
//       // exactly one of:
//       "primitive": {
//         "type": "tetrahedron" | "cube" | "plane" | "icosphere" | "openbox",
//         "subdivisions": 2,                    // icosphere only
//         "halfExtents": [hx, hy, hz],          // openbox only
//         "thickness": 0.1                      // openbox only
//       },
//       "obj": "path/relative/to/scene.obj",
//       // optional, applied in order:
//       "transform": [
//         {"translate": [x, y, z]}, {"scale": [x, y, z]},
//         {"rotateXDegrees": d}, {"rotateYDegrees": d}, {"rotateZDegrees": d}
//       ],
//       "material": {
//         "diffuse": [r, g, b],
//         "specular": [r, g, b], "specularExponent": 32.0   // optional
//       },
//       "castsShadow": true                     // optional, default true
//     }
//   ]
// }
//
// Malformed files and out-of-range values raise IoError / ParamError with the
// offending key in the message.

#include <iosfwd>
#include <string>

#include "sv/scene.hpp"

namespace sv {

// `baseDir` resolves relative "obj" paths; empty means the working directory.
Scene load_scene_json(std::istream& in, const std::string& baseDir,
                      const std::string& label);
Scene load_scene_json_file(const std::string& path);

}  // namespace sv
