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
#include "sv/raster.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sv/kernels.hpp"

namespace sv {

namespace {

inline std::int64_t snap(double windowCoord) {
  return std::llround(windowCoord * kSubPixelScale);
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return -floor_div(-a, b);
}

inline float clamp01(float v) { return v < 0.0f ? 0.0f : (v > 1.0f ? 1.0f : v); }

struct SnappedVertex {
  std::int64_t fx = 0, fy = 0;  // subpixel window coordinates
  double z = 0.0;               // window depth (unclamped)
  double invW = 0.0;
  std::array<double, kMaxVaryings> overW{};  // varying / w
};

// Edge a -> b; E(p) = dx*(py - ay) - dy*(px - ax) in subpixel units.
struct Edge {
  std::int64_t ax, ay, dx, dy;
  std::int64_t at(std::int64_t px, std::int64_t py) const {
    return dx * (py - ay) - dy * (px - ax);
  }
  // Tie rule: pixels exactly on a bottom or left boundary edge belong to the
  // triangle; on other edges they do not.
  std::int64_t threshold() const {
    const bool bottomLeft = (dy < 0) || (dy == 0 && dx > 0);
    return bottomLeft ? 0 : 1;
  }
};

struct Scratch {
  std::vector<std::uint8_t> cov;
  std::vector<float> depth;
};

Scratch& scratch_for(int width) {
  static thread_local Scratch s;
  if (s.cov.size() < static_cast<size_t>(width)) {
    s.cov.resize(static_cast<size_t>(width));
    s.depth.resize(static_cast<size_t>(width));
  }
  return s;
}

void raster_snapped_triangle(Framebuffer& fb, const RenderState& state,
                             const SnappedVertex& sv0, const SnappedVertex& sv1,
                             const SnappedVertex& sv2, int varyingCount,
                             const FragmentShader* shader, RasterStats* stats) {
  const SnappedVertex* v0 = &sv0;
  const SnappedVertex* v1 = &sv1;
  const SnappedVertex* v2 = &sv2;

  std::int64_t area2 = (v1->fx - v0->fx) * (v2->fy - v0->fy) -
                       (v1->fy - v0->fy) * (v2->fx - v0->fx);
  if (area2 == 0) return;
  const FaceOrientation orient =
      area2 > 0 ? FaceOrientation::Front : FaceOrientation::Back;
  if (state.cull == CullMode::Front && orient == FaceOrientation::Front) return;
  if (state.cull == CullMode::Back && orient == FaceOrientation::Back) return;
  if (orient == FaceOrientation::Back) {
    std::swap(v1, v2);  // canonical CCW: shared edges rasterize identically
    area2 = -area2;
  }

  const Edge e0{v1->fx, v1->fy, v2->fx - v1->fx, v2->fy - v1->fy};
  const Edge e1{v2->fx, v2->fy, v0->fx - v2->fx, v0->fy - v2->fy};
  const Edge e2{v0->fx, v0->fy, v1->fx - v0->fx, v1->fy - v0->fy};

  const std::int64_t minFx = std::min({v0->fx, v1->fx, v2->fx});
  const std::int64_t maxFx = std::max({v0->fx, v1->fx, v2->fx});
  const std::int64_t minFy = std::min({v0->fy, v1->fy, v2->fy});
  const std::int64_t maxFy = std::max({v0->fy, v1->fy, v2->fy});
  const std::int64_t half = kSubPixelScale / 2;
  const int pxMin = static_cast<int>(
      std::max<std::int64_t>(0, ceil_div(minFx - half, kSubPixelScale)));
  const int pxMax = static_cast<int>(std::min<std::int64_t>(
      fb.width() - 1, floor_div(maxFx - half, kSubPixelScale)));
  const int pyMin = static_cast<int>(
      std::max<std::int64_t>(0, ceil_div(minFy - half, kSubPixelScale)));
  const int pyMax = static_cast<int>(std::min<std::int64_t>(
      fb.height() - 1, floor_div(maxFy - half, kSubPixelScale)));
  if (pxMin > pxMax || pyMin > pyMax) return;

  kernels::CoverageSpanArgs cargs;
  cargs.t[0] = e0.threshold();
  cargs.t[1] = e1.threshold();
  cargs.t[2] = e2.threshold();
  cargs.de[0] = -e0.dy * kSubPixelScale;
  cargs.de[1] = -e1.dy * kSubPixelScale;
  cargs.de[2] = -e2.dy * kSubPixelScale;
  cargs.z[0] = v0->z;
  cargs.z[1] = v1->z;
  cargs.z[2] = v2->z;
  cargs.invArea2 = 1.0 / static_cast<double>(area2);

  const bool stencilOnly = state.stencilTest && !state.colorWrite &&
                           !state.depthWrite && shader == nullptr;
  const auto& kern = kernels::active();
  Scratch& scr = scratch_for(fb.width());

  kernels::StencilSpanArgs sargs;
  if (stencilOnly) {
    const StencilFaceState& face =
        (state.twoSided && orient == FaceOrientation::Back) ? state.stencilBack
                                                            : state.stencilFront;
    sargs.depthTest = state.depthTest;
    sargs.depthFunc = state.depthFunc;
    sargs.func = face.func;
    sargs.ref = face.ref;
    sargs.compareMask = face.compareMask;
    sargs.writeMask = face.writeMask;
    sargs.opStencilFail = face.opStencilFail;
    sargs.opDepthFail = face.opDepthFail;
    sargs.opDepthPass = face.opDepthPass;
    sargs.stencilMax = fb.stencil_max();
  }

  const int count = pxMax - pxMin + 1;
  for (int py = pyMin; py <= pyMax; ++py) {
    const std::int64_t cx = static_cast<std::int64_t>(pxMin) * kSubPixelScale + half;
    const std::int64_t cy = static_cast<std::int64_t>(py) * kSubPixelScale + half;
    cargs.e[0] = e0.at(cx, cy);
    cargs.e[1] = e1.at(cx, cy);
    cargs.e[2] = e2.at(cx, cy);
    kern.coverage_span(cargs, count, scr.cov.data(), scr.depth.data());

    if (stencilOnly) {
      sargs.stencil = &fb.stencil(pxMin, py);
      sargs.storedDepth = &fb.depth(pxMin, py);
      sargs.cov = scr.cov.data();
      sargs.fragDepth = scr.depth.data();
      kernels::SpanStats ss;
      kern.stencil_span(sargs, count, ss);
      if (stats) {
        stats->fragments += ss.fragments;
        stats->stencilWrites += ss.stencilWrites;
        stats->saturations += ss.saturations;
      }
      continue;
    }

    std::int64_t E0 = cargs.e[0], E1 = cargs.e[1], E2 = cargs.e[2];
    for (int i = 0; i < count; ++i) {
      if (scr.cov[static_cast<size_t>(i)]) {
        if (stats) ++stats->fragments;
        double attrs[kMaxVaryings];
        if (varyingCount > 0) {
          const double l0 = static_cast<double>(E0) * cargs.invArea2;
          const double l1 = static_cast<double>(E1) * cargs.invArea2;
          const double l2 = static_cast<double>(E2) * cargs.invArea2;
          const double denom = l0 * v0->invW + l1 * v1->invW + l2 * v2->invW;
          const double rcp = denom != 0.0 ? 1.0 / denom : 0.0;
          for (int k = 0; k < varyingCount; ++k) {
            const size_t ks = static_cast<size_t>(k);
            attrs[ks] = (l0 * v0->overW[ks] + l1 * v1->overW[ks] +
                         l2 * v2->overW[ks]) *
                        rcp;
          }
        }
        Fragment frag;
        frag.x = pxMin + i;
        frag.y = py;
        frag.depth = scr.depth[static_cast<size_t>(i)];
        frag.orientation = orient;
        frag.varyings = attrs;
        frag.varyingCount = varyingCount;
        apply_fragment_ops(frag, state, fb, shader, stats);
      }
      E0 += cargs.de[0];
      E1 += cargs.de[1];
      E2 += cargs.de[2];
    }
  }
}

}  // namespace

FaceOrientation face_orientation(const std::array<double, 2>& w0,
                                 const std::array<double, 2>& w1,
                                 const std::array<double, 2>& w2) {
  const std::int64_t x0 = snap(w0[0]), y0 = snap(w0[1]);
  const std::int64_t x1 = snap(w1[0]), y1 = snap(w1[1]);
  const std::int64_t x2 = snap(w2[0]), y2 = snap(w2[1]);
  const std::int64_t area2 = (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0);
  if (area2 == 0) return FaceOrientation::Degenerate;
  return area2 > 0 ? FaceOrientation::Front : FaceOrientation::Back;
}

void apply_fragment_ops(const Fragment& frag, const RenderState& state,
                        Framebuffer& fb, const FragmentShader* shader,
                        RasterStats* stats) {
  const StencilFaceState& face =
      (state.twoSided && frag.orientation == FaceOrientation::Back)
          ? state.stencilBack
          : state.stencilFront;
  std::uint32_t& stored = fb.stencil(frag.x, frag.y);

  bool sPass = true;
  if (state.stencilTest)
    sPass = kernels::stencil_compare(face.func, face.ref, face.compareMask,
                                     stored);
  bool dPass = sPass;
  if (sPass && state.depthTest)
    dPass = kernels::depth_compare(state.depthFunc, frag.depth,
                                   fb.depth(frag.x, frag.y));

  if (state.stencilTest) {
    const StencilOp op = !sPass ? face.opStencilFail
                                : (dPass ? face.opDepthPass : face.opDepthFail);
    if (op != StencilOp::Keep) {
      if (stats) ++stats->stencilWrites;
      bool saturated = false;
      const std::uint32_t r =
          kernels::stencil_op_result(op, stored, fb.stencil_max(), &saturated);
      if (saturated && stats) ++stats->saturations;
      stored = ((stored & ~face.writeMask) | (r & face.writeMask)) &
               fb.stencil_max();
    }
  }

  if (sPass && dPass) {
    if (state.depthWrite) fb.depth(frag.x, frag.y) = frag.depth;
    if (state.colorWrite && shader) {
      const std::array<float, 3> rgb = (*shader)(frag);
      float* c = fb.color(frag.x, frag.y);
      if (state.blend == BlendMode::Replace) {
        for (int k = 0; k < 3; ++k) c[k] = clamp01(rgb[static_cast<size_t>(k)]);
      } else {
        for (int k = 0; k < 3; ++k)
          c[k] = clamp01(c[k] + rgb[static_cast<size_t>(k)]);
      }
    }
  }
}

void draw_clip_triangle(Framebuffer& fb, const RenderState& state,
                        const ClipVertex& v0, const ClipVertex& v1,
                        const ClipVertex& v2, int varyingCount,
                        const FragmentShader* shader, RasterStats* stats) {
  const auto poly = clip_triangle(v0, v1, v2, state.depthClamp);
  if (poly.size() < 3) return;

  std::vector<SnappedVertex> sv(poly.size());
  const double halfW = 0.5 * fb.width();
  const double halfH = 0.5 * fb.height();
  for (size_t i = 0; i < poly.size(); ++i) {
    const HVec4& p = poly[i].position;
    if (!(p.w > 0.0)) return;  // cannot happen for valid clipped geometry
    const double invW = 1.0 / p.w;
    const double ndcX = p.x * invW;
    const double ndcY = p.y * invW;
    const double ndcZ = p.z * invW;
    sv[i].fx = snap((ndcX + 1.0) * halfW);
    sv[i].fy = snap((ndcY + 1.0) * halfH);
    sv[i].z = 0.5 * ndcZ + 0.5;
    sv[i].invW = invW;
    for (int k = 0; k < varyingCount; ++k) {
      const size_t ks = static_cast<size_t>(k);
      sv[i].overW[ks] = poly[i].varying[ks] * invW;
    }
  }
  for (size_t i = 1; i + 1 < poly.size(); ++i)
    raster_snapped_triangle(fb, state, sv[0], sv[i], sv[i + 1], varyingCount,
                            shader, stats);
}

}  // namespace sv
