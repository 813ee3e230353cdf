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

// Indexed triangle meshes and the topology queries needed to build closed
// shadow volumes: edge adjacency, closed-2-manifold validation, per-triangle
// facing with respect to a light, silhouette edge extraction and stitching of
// silhouette edges into closed loops.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sv/hgeom.hpp"

namespace sv {

struct TriMesh {
  std::vector<HVec4> vertices;                 // homogeneous, w >= 0
  std::vector<std::array<int, 3>> triangles;   // CCW from outside
};

// neighbor[t][j] is the triangle sharing the directed edge
// (triangles[t][j] -> triangles[t][(j+1)%3]) with opposite direction.
struct Adjacency {
  std::vector<std::array<int, 3>> neighbor;
};

struct FacingSet {
  std::vector<std::uint8_t> backFacing;  // 1 iff dot(plane, light) < 0
  bool back(int tri) const { return backFacing[static_cast<size_t>(tri)] != 0; }
  bool front(int tri) const { return !back(tri); }
};

struct ValidationReport {
  bool closed = true;
  bool windingConsistent = true;
  bool wNonNegative = true;
  bool nonDegenerate = true;
  std::vector<std::string> issues;

  bool ok() const {
    return closed && windingConsistent && wNonNegative && nonDegenerate;
  }
};

// One directed silhouette edge, oriented as it appears in its front-facing
// triangle (from -> to).
struct SilhouetteEdge {
  int from = -1, to = -1;
  HVec4 a, b;  // vertices[from], vertices[to]
};

// Builds edge adjacency. Throws NonManifoldError (naming the first offending
// edge in triangle order) if any directed edge is reused or unmatched, i.e.
// the mesh is not a closed 2-manifold with consistent winding.
Adjacency build_adjacency(const TriMesh& mesh);

// Non-throwing diagnosis of the closed-2-manifold requirements plus w >= 0
// and non-degenerate triangles.
ValidationReport validate_mesh(const TriMesh& mesh);

// Plane of every triangle (see plane_from_triangle).
std::vector<Plane> triangle_planes(const TriMesh& mesh);

// Classifies triangles against a light position (w = 1 style positional,
// w = 0 directional). d = dot(plane, light): d < 0 is back-facing, d >= 0
// front-facing. Homogeneous in the light: scaling light by k > 0 never
// changes the result.
FacingSet classify_facing(const TriMesh& mesh, std::span<const Plane> planes,
                          const HVec4& light);

// Directed edges of front-facing triangles whose neighbor is back-facing,
// in deterministic triangle order.
std::vector<SilhouetteEdge> extract_silhouette_edges(const TriMesh& mesh,
                                                     const Adjacency& adj,
                                                     const FacingSet& facing);

// Chains silhouette edges into closed loops (to -> from). On a valid closed
// 2-manifold every silhouette edge set decomposes into closed loops; throws
// TopologyError otherwise.
std::vector<std::vector<SilhouetteEdge>> stitch_loops(
    std::span<const SilhouetteEdge> edges);

// Applies m to every vertex.
TriMesh transform_mesh(const TriMesh& mesh, const HMat4& m);

}  // namespace sv
