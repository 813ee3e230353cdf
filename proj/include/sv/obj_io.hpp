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

// Minimal Wavefront OBJ subset: `v x y z [w]` and triangular `f i j k` with
// 1-based indices. Anything else (except comments and blank lines) is an
// error, as are non-triangular faces and out-of-range indices.

#include <iosfwd>
#include <string>

#include "sv/mesh.hpp"

namespace sv {

TriMesh load_obj(std::istream& in, const std::string& label = "obj");
TriMesh load_obj_file(const std::string& path);

void save_obj(const TriMesh& mesh, std::ostream& out);

}  // namespace sv
