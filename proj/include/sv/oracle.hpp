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

// Brute-force shadow-ray ground truth. Every query is answered by casting a
// ray from a surface point toward the light and testing it against all shadow
// casting triangles; none of the stencil, clipping or projection machinery is
// consulted. All oracle math runs in eye space with affine (w=1) vertices.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sv/hgeom.hpp"
#include "sv/mesh.hpp"
#include "sv/scene.hpp"

namespace sv {

enum class ShadowState : std::uint8_t {
  Lit = 0,
  Shadowed = 1,
  NoGeometry = 2,  // pixel shows background; shadow state undefined
};

struct ShadowMask {
  int width = 0;
  int height = 0;
  std::vector<ShadowState> values;  // row 0 = bottom, matching Framebuffer

  ShadowMask() = default;
  ShadowMask(int w, int h)
      : width(w), height(h),
        values(static_cast<std::size_t>(w) * static_cast<std::size_t>(h),
               ShadowState::NoGeometry) {}

  ShadowState at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * width + x];
  }
  void set(int x, int y, ShadowState s) {
    values[static_cast<std::size_t>(y) * width + x] = s;
  }
};

// Per-pixel eye-space surface record captured by the ambient pass of the
// pipeline (positions/normals of the nearest surface, if any).
struct VisiblePointBuffer {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> covered;
  std::vector<Vec3> position;  // eye space
  std::vector<Vec3> normal;    // eye space, not normalized

  void reset(int w, int h) {
    width = w;
    height = h;
    const std::size_t n =
        static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    covered.assign(n, 0);
    position.assign(n, Vec3{});
    normal.assign(n, Vec3{});
  }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }
};

struct MaskDiff {
  int comparablePixels = 0;   // pixels covered in both masks
  int mismatches = 0;         // comparable pixels whose states differ
  int boundaryPixels = 0;     // reference pixels on a lit/shadow boundary
  int boundaryMismatches = 0; // mismatches at boundary pixels
  int interiorMismatches() const { return mismatches - boundaryMismatches; }
};

// Offset applied along the surface normal before casting a shadow ray, to
// avoid self-intersection with the surface the point lies on.
inline constexpr double kShadowRayEpsilon = 1e-7;

// Precomputed triangle soup for ray queries. Build once, query many times.
class OccluderSet {
 public:
  // Meshes must be affine (w > 0 on every vertex); vertices are dehomogenized.
  explicit OccluderSet(std::span<const TriMesh> meshes);

  // True if the segment / ray from `point` (offset by eps along `normal`)
  // toward the light hits any occluder triangle. Positional lights (w > 0)
  // bound the ray at the light; directional lights (w = 0) use an unbounded
  // ray toward -direction-of-travel of the light, i.e. along light.xyz.
  bool occluded(const Vec3& point, const Vec3& normal,
                const HVec4& light) const;

  // Number of occluder triangles crossed by the same ray (no early out).
  int depth_count(const Vec3& point, const Vec3& normal,
                  const HVec4& light) const;

  // Number of source meshes whose surface the same ray crosses at least
  // once, i.e. how many casters' shadow volumes contain the point.
  int containing_count(const Vec3& point, const Vec3& normal,
                       const HVec4& light) const;

  // Nearest intersection of an arbitrary ray with the set; returns false if
  // nothing is hit. Used for the independent-visibility mask mode.
  bool closest_hit(const Vec3& origin, const Vec3& dir, double& tHit,
                   Vec3& outNormal) const;

  std::size_t triangle_count() const { return ax_.size(); }
  std::size_t mesh_count() const { return meshStart_.size() - 1; }

 private:
  // Structure-of-arrays triangle storage feeding the batched kernel.
  std::vector<double> ax_, ay_, az_, bx_, by_, bz_, cx_, cy_, cz_;
  std::vector<std::size_t> meshStart_;  // triangle range per source mesh
};

ShadowState shadow_ray_test(const Vec3& point, const Vec3& normal,
                            const HVec4& light, const OccluderSet& occluders);

// Shadow depth of a surface point: the number of casting meshes whose shadow
// volume contains it. A point is inside a caster's volume iff the segment
// (positional light) or ray (directional light) from the point toward the
// light intersects that caster's surface at least once.
int shadow_depth_count(const Vec3& point, const Vec3& normal,
                       const HVec4& light, const OccluderSet& occluders);

// How the oracle decides which surface point each pixel shows.
enum class VisibilitySource {
  RendererPoints,   // reuse the pipeline's per-pixel surface records
  IndependentRays,  // cast eye rays through pixel centers, ignore renderer
};

// Ground-truth shadow mask for one light. `visible` is required for
// RendererPoints and ignored for IndependentRays. Casters are the scene
// meshes with castsShadow set; visibility rays see every mesh.
ShadowMask reference_mask(const Scene& scene, std::size_t lightIndex,
                          int width, int height, VisibilitySource source,
                          const VisiblePointBuffer* visible);

// Shadow mask implied by a stencil buffer: covered pixels with stencil zero
// are lit, covered pixels with nonzero stencil are shadowed.
ShadowMask mask_from_stencil(std::span<const std::uint32_t> stencil,
                             const VisiblePointBuffer& visible);

// Pixel-wise comparison. Boundary pixels are reference pixels with at least
// one 8-neighbor in a different shadow state (or on the image edge next to
// missing neighbors); disagreements there are expected half-pixel artifacts
// of point sampling, not algorithmic errors.
MaskDiff compare_shadow_masks(const ShadowMask& rendered,
                              const ShadowMask& reference);

// Comparison of per-pixel stencil values against the oracle's crossing
// counts. The shadow ray from a point outside all casters to a light outside
// all casters crosses caster surfaces an even number of times, and half that
// count equals the stencil value a correct depth-fail pass leaves behind
// (the winding depth of the shadow region). Pixels with an odd crossing
// count (grazing rays) are skipped; boundary pixels are those whose expected
// count differs from any 8-neighbor's or whose neighbor is missing.
struct StencilCountCheck {
  int comparablePixels = 0;
  int mismatches = 0;
  int boundaryPixels = 0;
  int boundaryMismatches = 0;
  int oddCountPixels = 0;  // skipped, not comparable
  int maxExpectedCount = 0;
  int interiorMismatches() const { return mismatches - boundaryMismatches; }
};

// `stencil` is the buffer captured after the light's volume pass (before any
// lighting-pass writes). With wrapOps the expected count is reduced modulo
// 2^bits; with saturating ops it is compared as-is, which is only meaningful
// while counts stay within range.
StencilCountCheck compare_stencil_counts(const Scene& scene,
                                         std::size_t lightIndex,
                                         std::span<const std::uint32_t> stencil,
                                         const VisiblePointBuffer& visible,
                                         bool wrapOps,
                                         std::uint32_t stencilMax);

// Grayscale dump: lit = 255, shadowed = 0, no geometry = 128.
void write_mask_pgm_file(const ShadowMask& mask, const std::string& path);

}  // namespace sv
