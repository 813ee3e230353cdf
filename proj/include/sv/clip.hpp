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

// Sutherland-Hodgman clipping in homogeneous clip space against
// -w <= x, y, z <= w with inclusive boundary tests, so geometry lying exactly
// on the far plane (z == w, the projected-to-infinity caps under an infinite
// projection) is kept intact. With depthClamp the two depth planes are
// replaced by a small positive-w guard; window depth is clamped later per
// fragment.
//
// Edge-plane intersections order the two endpoints canonically before
// interpolating, so the two triangles sharing a clipped edge generate
// bit-identical intersection vertices and the seam stays watertight.

#include <array>
#include <vector>

#include "sv/hgeom.hpp"

namespace sv {

inline constexpr int kMaxVaryings = 8;
inline constexpr double kWClipGuard = 1e-6;

struct ClipVertex {
  HVec4 position;
  std::array<double, kMaxVaryings> varying{};
};

// Returns the clipped convex polygon (possibly empty, or the input triangle
// verbatim when fully inside). Varyings interpolate linearly in clip space.
std::vector<ClipVertex> clip_triangle(const ClipVertex& v0,
                                      const ClipVertex& v1,
                                      const ClipVertex& v2, bool depthClamp);

}  // namespace sv
