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

// Reference kernels. SIMD variants must reproduce these bit for bit; keep the
// operation order here in sync with the vector implementations.

#include "sv/kernels.hpp"

namespace sv::kernels {

namespace {

void coverage_span_scalar(const CoverageSpanArgs& args, int count,
                          std::uint8_t* cov, float* depth) {
  std::int64_t e0 = args.e[0], e1 = args.e[1], e2 = args.e[2];
  for (int i = 0; i < count; ++i) {
    cov[i] = (e0 >= args.t[0] && e1 >= args.t[1] && e2 >= args.t[2]) ? 1 : 0;
    const double s = (static_cast<double>(e0) * args.z[0] +
                      static_cast<double>(e1) * args.z[1]) +
                     static_cast<double>(e2) * args.z[2];
    double d = s * args.invArea2;
    d = d > 0.0 ? d : 0.0;  // exact max/min semantics, so SIMD ±0 agrees
    d = d < 1.0 ? d : 1.0;
    depth[i] = static_cast<float>(d);
    e0 += args.de[0];
    e1 += args.de[1];
    e2 += args.de[2];
  }
}

void stencil_span_scalar(const StencilSpanArgs& args, int count,
                         SpanStats& stats) {
  for (int i = 0; i < count; ++i) {
    if (!args.cov[i]) continue;
    ++stats.fragments;
    const std::uint32_t s = args.stencil[i];
    const bool sPass = stencil_compare(args.func, args.ref, args.compareMask, s);
    const bool dPass =
        sPass && (!args.depthTest ||
                  depth_compare(args.depthFunc, args.fragDepth[i],
                                args.storedDepth[i]));
    const StencilOp op = !sPass ? args.opStencilFail
                                : (dPass ? args.opDepthPass : args.opDepthFail);
    if (op == StencilOp::Keep) continue;
    ++stats.stencilWrites;
    bool saturated = false;
    const std::uint32_t r = stencil_op_result(op, s, args.stencilMax, &saturated);
    if (saturated) ++stats.saturations;
    args.stencil[i] =
        ((s & ~args.writeMask) | (r & args.writeMask)) & args.stencilMax;
  }
}

void fill_f32_scalar(float* dst, float value, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) dst[i] = value;
}

void fill_u32_scalar(std::uint32_t* dst, std::uint32_t value,
                     std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) dst[i] = value;
}

}  // namespace

// Shared by the scalar table and by SIMD tails.
std::uint64_t ray_tri_hits_scalar(const RayPlan& ray, const TriSoA& tris,
                                  int first, int count) {
  const double* compA[3] = {tris.x[0], tris.y[0], tris.z[0]};
  const double* compB[3] = {tris.x[1], tris.y[1], tris.z[1]};
  const double* compC[3] = {tris.x[2], tris.y[2], tris.z[2]};
  const int kx = ray.kx, ky = ray.ky, kz = ray.kz;
  std::uint64_t mask = 0;
  for (int i = 0; i < count; ++i) {
    const int t = first + i;
    const double akz = compA[kz][t] - ray.org[kz];
    const double bkz = compB[kz][t] - ray.org[kz];
    const double ckz = compC[kz][t] - ray.org[kz];
    const double ax = (compA[kx][t] - ray.org[kx]) - ray.sx * akz;
    const double ay = (compA[ky][t] - ray.org[ky]) - ray.sy * akz;
    const double bx = (compB[kx][t] - ray.org[kx]) - ray.sx * bkz;
    const double by = (compB[ky][t] - ray.org[ky]) - ray.sy * bkz;
    const double cx = (compC[kx][t] - ray.org[kx]) - ray.sx * ckz;
    const double cy = (compC[ky][t] - ray.org[ky]) - ray.sy * ckz;

    const double u = cx * by - cy * bx;
    const double v = ax * cy - ay * cx;
    const double w = bx * ay - by * ax;
    const bool sameSign = (u >= 0.0 && v >= 0.0 && w >= 0.0) ||
                          (u <= 0.0 && v <= 0.0 && w <= 0.0);
    if (!sameSign) continue;
    const double det = (u + v) + w;
    if (det == 0.0) continue;
    const double tz = (u * (ray.sz * akz) + v * (ray.sz * bkz)) +
                      w * (ray.sz * ckz);
    const bool hit = det > 0.0 ? (tz > 0.0 && tz < ray.tMax * det)
                               : (tz < 0.0 && tz > ray.tMax * det);
    if (hit) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

const KernelTable& scalar_table() {
  static const KernelTable table = {
      "scalar",         coverage_span_scalar, stencil_span_scalar,
      fill_f32_scalar,  fill_u32_scalar,      ray_tri_hits_scalar,
  };
  return table;
}

}  // namespace sv::kernels
