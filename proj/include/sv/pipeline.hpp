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

// Multipass stenciled shadow rendering:
//   1. ambient pass: depth prepass + ambient color, records per-pixel
//      eye-space surface points for verification
//   2. per light: clear stencil, rasterize the closed shadow volumes into the
//      stencil buffer (counting depth-test failures, or depth-test passes for
//      side loops marked ZPass), then add the light's contribution wherever
//      the stencil is zero.
// Pixels whose stencil count is nonzero lie in shadow because the closed
// volume boundary is crossed a net nonzero number of times between fragment
// and the far end of the eye ray.

#include <cstdint>
#include <functional>
#include <vector>

#include "sv/framebuffer.hpp"
#include "sv/hgeom.hpp"
#include "sv/oracle.hpp"
#include "sv/raster.hpp"
#include "sv/scene.hpp"
#include "sv/volume.hpp"

namespace sv {

enum class FormulationMode {
  ZFail,         // count depth-fail crossings; renders sides and both caps
  ZPass,         // count depth-pass crossings; renders sides only
  PerLoopMixed,  // per-silhouette-loop choice via PipelineModes::loopPolicy
};

enum class ProjectionMode { Finite, Infinite };

// Stencil op applied on depth-pass in the lighting pass so coincident
// geometry cannot add the same light twice: Incr marks lit pixels (stencil
// becomes 1, the EQUAL-0 test rejects repeats), Keep disables the guard.
enum class DoubleBlendGuard : std::uint8_t { Incr, Keep };

struct PipelineModes {
  int width = 512;
  int height = 512;
  FormulationMode formulation = FormulationMode::ZFail;
  ProjectionMode projection = ProjectionMode::Infinite;
  bool depthClamp = false;   // volume pass only
  bool twoSided = false;     // single-submission two-sided stencil
  bool wrapOps = true;       // wrapping stencil arithmetic (required twoSided)
  DoubleBlendGuard doubleBlendGuard = DoubleBlendGuard::Incr;
  VolumeEncoding encoding = VolumeEncoding::Independent;
  bool dropDirectionalBackCap = false;
  int stencilBits = 8;
  bool recordPerLightStencil = false;  // snapshot stencil before lighting
  // Formulation for silhouette loop `loopIndex` of scene mesh `meshIndex`.
  // Required (and only consulted) when formulation is PerLoopMixed.
  std::function<LoopFormulation(int meshIndex, int loopIndex)> loopPolicy;
};

struct PassStats {
  std::uint64_t shadowFragments = 0;   // volume-pass covered pixels
  std::uint64_t stencilWrites = 0;     // non-Keep stencil ops applied
  std::uint64_t saturations = 0;       // saturating Incr/Decr clamps
  std::uint64_t volumeVerticesSubmitted = 0;  // side vertices, per submission
  std::uint64_t capVerticesSubmitted = 0;
  std::uint64_t volumeCount = 0;  // volumes built (mesh x light)
  std::uint64_t loopCount = 0;    // silhouette loops across all volumes
};

struct FrameResult {
  Framebuffer framebuffer;
  PassStats stats;
  VisiblePointBuffer visible;
  // With recordPerLightStencil: stencil contents after each light's volume
  // pass (before the lighting pass resumes writing to it).
  std::vector<std::vector<std::uint32_t>> perLightStencil;

  FrameResult(int w, int h, int stencilBits)
      : framebuffer(w, h, stencilBits) {}
};

// Direct (non-ambient) contribution of one eye-space light at an eye-space
// surface point: Lambert diffuse plus optional Blinn-Phong specular.
Vec3 shade_fragment(const Vec3& posEye, const Vec3& normalEye,
                    const Material& material, const LightSource& lightEye);

// Vertex-stream accounting for one volume. Without two-sided stencil every
// group is submitted twice (once per facing), doubling the counts.
struct VolumeSubmission {
  std::uint64_t sideVertices = 0;
  std::uint64_t capVertices = 0;
  bool capsRendered = false;
};

// Rasterizes one closed shadow volume into the stencil buffer. `clipFromWorld`
// maps volume vertices to clip space; `loopFormulation(i)` picks the counting
// mode of side loop i. Caps are always rendered under ZFail and never under
// ZPass; under PerLoopMixed they are rendered iff some loop counts depth-fail
// or the volume has no silhouette loops (a loopless volume can only be
// counted depth-fail).
VolumeSubmission shadow_volume_pass(
    Framebuffer& fb, const ShadowVolumeGeometry& volume,
    const HMat4& clipFromWorld, const PipelineModes& modes,
    const std::function<LoopFormulation(int)>& loopFormulation,
    RasterStats& stats);

// Renders the full frame. Throws ParamError for invalid mode combinations
// (two-sided without wrap ops, fan encoding with a positional light, finite
// projection with an infinite far plane) and propagates scene validation
// errors.
FrameResult render_frame(const Scene& scene, const PipelineModes& modes);

}  // namespace sv
