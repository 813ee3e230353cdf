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

// Canonical test meshes. All closed primitives are consistently wound
// counter-clockwise seen from outside and centered at the origin.

#include "sv/mesh.hpp"

namespace sv {

// Regular tetrahedron inscribed in the cube [-0.5, 0.5]^3 (4 triangles).
TriMesh unit_tetrahedron();

// Axis-aligned cube [-0.5, 0.5]^3 (12 triangles).
TriMesh unit_cube();

// Single quad [-0.5, 0.5]^2 in the y = 0 plane, front side +y (2 triangles).
// Not closed: usable as a receiver, not as an occluder.
TriMesh unit_plane();

// Sphere of radius 0.5 built by subdividing an icosahedron `subdivisions`
// times (20 * 4^n triangles).
TriMesh icosphere(int subdivisions);

// Open-topped box ("cup"): outer shell [-hx, hx] x [-hy, hy] x [-hz, hz] with
// wall thickness t and an open cavity reaching down from y = +hy. Closed
// 2-manifold: 16 vertices, 42 edges, 28 triangles.
TriMesh open_box(double hx, double hy, double hz, double t);

// Signed volume enclosed by a closed mesh, positive for outward winding.
// Requires affine vertices (w > 0).
double mesh_signed_volume(const TriMesh& mesh);

}  // namespace sv
