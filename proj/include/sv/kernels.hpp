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

// Hot inner loops behind a runtime-dispatched kernel table: span coverage and
// depth evaluation, stencil-only fragment operations, buffer fills, and
// batched ray-triangle occlusion tests. The scalar table is the reference;
// SIMD variants (AVX2 on x86-64, NEON on aarch64) are required to produce
// bit-identical outputs and are selected at startup, overridable with the
// SV_KERNELS environment variable (auto | scalar | avx2 | neon).
//
// All floating-point kernel math is written so that scalar and SIMD evaluate
// the same IEEE operation sequence; the build disables FP contraction to keep
// that true.

#include <cstdint>

#include "sv/hgeom.hpp"
#include "sv/raster_state.hpp"

namespace sv::kernels {

// ---- span coverage + window depth -----------------------------------------
// Edge functions are exact int64 values at pixel centers on a 1/256 subpixel
// grid. Pixel i of the span is covered iff e_k + i*de_k >= t_k for all three
// edges, where t_k is 0 for bottom-left edges and 1 otherwise (the tie rule).
// Window depth is (e0*z0 + e1*z1 + e2*z2) * invArea2 clamped to [0, 1],
// evaluated in double and stored as float.
struct CoverageSpanArgs {
  std::int64_t e[3];
  std::int64_t de[3];
  std::int64_t t[3];
  double z[3];
  double invArea2;
};

// ---- stencil-only fragment ops --------------------------------------------
// Fragment pipeline for passes that write neither depth nor color (shadow
// volume rendering): stencil test, depth test, one stencil op.
struct StencilSpanArgs {
  std::uint32_t* stencil;
  const float* storedDepth;
  const std::uint8_t* cov;
  const float* fragDepth;
  bool depthTest = true;
  DepthFunc depthFunc = DepthFunc::Less;
  StencilFunc func = StencilFunc::Always;
  std::uint32_t ref = 0;
  std::uint32_t compareMask = ~0u;
  std::uint32_t writeMask = ~0u;
  StencilOp opStencilFail = StencilOp::Keep;
  StencilOp opDepthFail = StencilOp::Keep;
  StencilOp opDepthPass = StencilOp::Keep;
  std::uint32_t stencilMax = 255;  // 2^bits - 1
};

struct SpanStats {
  std::uint64_t fragments = 0;      // covered pixels processed
  std::uint64_t stencilWrites = 0;  // non-Keep ops applied
  std::uint64_t saturations = 0;    // Incr at max / Decr at 0
};

// ---- batched watertight ray-triangle occlusion ----------------------------
// Shear-based watertight test in double precision. A hit requires strict
// 0 < t < tMax, so segment endpoints themselves never count.
struct RayPlan {
  double org[3] = {0, 0, 0};
  int kx = 0, ky = 1, kz = 2;  // axis permutation, kz = dominant direction
  double sx = 0, sy = 0, sz = 0;
  double tMax = 0;
};

struct TriSoA {
  const double* x[3];  // x[corner][tri]
  const double* y[3];
  const double* z[3];
};

// Builds the shear plan; throws ParamError for a zero direction.
RayPlan make_ray_plan(const Vec3& org, const Vec3& dir, double tMax);

struct KernelTable {
  const char* name;
  void (*coverage_span)(const CoverageSpanArgs& args, int count,
                        std::uint8_t* cov, float* depth);
  void (*stencil_span)(const StencilSpanArgs& args, int count,
                       SpanStats& stats);
  void (*fill_f32)(float* dst, float value, std::size_t count);
  void (*fill_u32)(std::uint32_t* dst, std::uint32_t value, std::size_t count);
  // Hit bitmask for triangles [first, first + count), count <= 64.
  std::uint64_t (*ray_tri_hits)(const RayPlan& ray, const TriSoA& tris,
                                int first, int count);
};

enum class Mode { Auto, Scalar, Avx2, Neon };

const KernelTable& scalar_table();
const KernelTable& active();
Mode active_mode();
// Overrides dispatch (tests); Mode::Auto restores detection + SV_KERNELS.
void force_mode(Mode m);
// True when the named SIMD table can run on this machine.
bool mode_supported(Mode m);

// ---- shared per-pixel semantics (used by scalar kernels and the shaded
// fragment path so both agree by construction) ------------------------------

inline bool depth_compare(DepthFunc f, float frag, float stored) {
  switch (f) {
    case DepthFunc::Less: return frag < stored;
    case DepthFunc::LessEqual: return frag <= stored;
    case DepthFunc::Equal: return frag == stored;
    case DepthFunc::Always: return true;
  }
  return true;
}

inline bool stencil_compare(StencilFunc f, std::uint32_t ref,
                            std::uint32_t compareMask, std::uint32_t stored) {
  switch (f) {
    case StencilFunc::Always: return true;
    case StencilFunc::Equal: return (ref & compareMask) == (stored & compareMask);
  }
  return true;
}

inline std::uint32_t stencil_op_result(StencilOp op, std::uint32_t s,
                                       std::uint32_t maxVal,
                                       bool* saturated) {
  switch (op) {
    case StencilOp::Keep: return s;
    case StencilOp::Zero: return 0;
    case StencilOp::Incr:
      if (s >= maxVal) {
        if (saturated) *saturated = true;
        return maxVal;
      }
      return s + 1;
    case StencilOp::Decr:
      if (s == 0) {
        if (saturated) *saturated = true;
        return 0;
      }
      return s - 1;
    case StencilOp::IncrWrap: return (s + 1) & maxVal;
    case StencilOp::DecrWrap: return (s - 1) & maxVal;
  }
  return s;
}

}  // namespace sv::kernels
