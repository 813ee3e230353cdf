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

// Closed shadow-volume geometry for an occluder and a light: silhouette
// loops extruded to infinity (side quads whose far edge has w = 0), a back
// cap made of the back-facing triangles projected to infinity, and a front
// cap made of the light-facing triangles as-is. The union is a closed
// surface, which is what makes stencil counting exact for any eye position.
//
// Side loops can be submitted in three encodings with identical coverage:
//   Independent:     4 vertices per quad (4n per n-edge loop)
//   LoopStrips:      one triangle strip per loop (2n + 2 vertices)
//   DirectionalFans: one triangle fan per loop around the single point at
//                    infinity opposite a directional light (n + 2 vertices)

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "sv/hgeom.hpp"
#include "sv/mesh.hpp"

namespace sv {

enum class VolumeEncoding { Independent, LoopStrips, DirectionalFans };

// Per-loop stencil formulation used by the mixed pipeline mode.
enum class LoopFormulation { ZPass, ZFail };

struct VolumeOptions {
  VolumeEncoding encoding = VolumeEncoding::Independent;
  // Under DirectionalFans the projected back cap collapses to zero-area
  // triangles; they are emitted by default and may be dropped.
  bool dropDirectionalBackCap = false;
};

struct VolumeQuad {
  std::array<HVec4, 4> v;
};

struct VolumeTri {
  std::array<HVec4, 3> v;
};

struct SideLoop {
  std::vector<VolumeQuad> quads;       // one per silhouette edge
  std::vector<HVec4> stripVertices;    // LoopStrips stream (2n + 2)
  std::vector<HVec4> fanVertices;      // DirectionalFans stream (n + 2)
  int edge_count() const { return static_cast<int>(quads.size()); }
};

struct ShadowVolumeGeometry {
  std::vector<SideLoop> sideLoops;
  std::vector<VolumeTri> backCap;   // projected to infinity (w = 0)
  std::vector<VolumeTri> frontCap;  // light-facing occluder triangles
  VolumeEncoding encoding = VolumeEncoding::Independent;

  // Vertices that the chosen encoding submits for the sides / the caps.
  std::size_t side_vertices_submitted() const;
  std::size_t cap_vertices_submitted() const;
};

// Central projection of v away from the light onto the plane at infinity:
// (v.xyz * light.w - light.xyz * v.w, 0). For w = 1 vertices and a positional
// light this is the direction from the light through the vertex; for a
// directional light every vertex maps to the same point at infinity.
// Throws DegeneracyError if the result is the zero vector (vertex coincides
// with a positional light).
HVec4 project_to_infinity(const HVec4& v, const HVec4& light);

// Extrusion quad for silhouette edge a -> b, wound to face away from the
// volume interior: (b, a, a_inf, b_inf).
VolumeQuad extrude_quad(const HVec4& a, const HVec4& b, const HVec4& light);

ShadowVolumeGeometry build_shadow_volume(const TriMesh& mesh,
                                         const Adjacency& adj,
                                         const FacingSet& facing,
                                         const HVec4& light,
                                         const VolumeOptions& opts = {});

// Triangles a loop's encoding decodes to; for LoopStrips these are bitwise
// identical to the Independent expansion.
std::vector<VolumeTri> side_triangles(const SideLoop& loop,
                                      VolumeEncoding encoding);

// All triangles of the volume under its encoding (sides then caps).
std::vector<VolumeTri> volume_triangles(const ShadowVolumeGeometry& g);

// True iff every directed edge of the triangulated surface is matched by an
// equal number of oppositely directed copies (bit-exact vertex identity).
bool check_closed(const ShadowVolumeGeometry& g);

// Debug export; w = 0 vertices are written with an explicit fourth
// coordinate.
void export_obj(const ShadowVolumeGeometry& g, std::ostream& out);

}  // namespace sv
