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

// Watertight software rasterizer. Window coordinates snap to a 1/256 subpixel
// grid; coverage uses exact int64 edge functions sampled at pixel centers
// with a bottom-left tie rule, and the winding of every triangle is
// canonicalized before setup. Two triangles sharing an edge therefore cover
// each pixel exactly once, and a front/back pair over the same geometry
// covers identical pixel sets - the property stencil counting depends on.
//
// Depth interpolates affinely in window space from the same exact edge
// values; shaded attributes interpolate perspective-correctly.

#include <array>
#include <cstdint>
#include <functional>

#include "sv/clip.hpp"
#include "sv/framebuffer.hpp"
#include "sv/raster_state.hpp"

namespace sv {

inline constexpr int kSubPixelBits = 8;
inline constexpr int kSubPixelScale = 1 << kSubPixelBits;

enum class FaceOrientation : std::uint8_t { Front, Back, Degenerate };

struct Fragment {
  int x = 0, y = 0;
  float depth = 0.0f;
  FaceOrientation orientation = FaceOrientation::Front;
  const double* varyings = nullptr;
  int varyingCount = 0;
};

using FragmentShader = std::function<std::array<float, 3>(const Fragment&)>;

struct RasterStats {
  std::uint64_t fragments = 0;
  std::uint64_t stencilWrites = 0;
  std::uint64_t saturations = 0;
};

// Orientation of a window-space triangle after subpixel snapping: counter-
// clockwise (positive area) is Front, zero snapped area is Degenerate.
FaceOrientation face_orientation(const std::array<double, 2>& w0,
                                 const std::array<double, 2>& w1,
                                 const std::array<double, 2>& w2);

// Fixed-function per-fragment pipeline: stencil test, depth test, one stencil
// op; depth/color written only when both tests pass. Color blending clamps to
// [0, 1] at write. `shader` may be null when colorWrite is off.
void apply_fragment_ops(const Fragment& frag, const RenderState& state,
                        Framebuffer& fb, const FragmentShader* shader,
                        RasterStats* stats);

// Clips one clip-space triangle, fans the resulting polygon and rasterizes
// it. Culling and the two-sided stencil face selection use the post-snap
// orientation of each fan triangle.
void draw_clip_triangle(Framebuffer& fb, const RenderState& state,
                        const ClipVertex& v0, const ClipVertex& v1,
                        const ClipVertex& v2, int varyingCount,
                        const FragmentShader* shader, RasterStats* stats);

}  // namespace sv
