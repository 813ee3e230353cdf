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

// NEON (aarch64) kernel variants, bit-compatible with the scalar reference.
// Stencil span stays scalar: it is already load/store bound at 2 lanes.

#if defined(__aarch64__)

#include <arm_neon.h>

#include "tables.hpp"

namespace sv::kernels {

namespace {

void coverage_span_neon(const CoverageSpanArgs& args, int count,
                        std::uint8_t* cov, float* depth) {
  const float64x2_t z0 = vdupq_n_f64(args.z[0]);
  const float64x2_t z1 = vdupq_n_f64(args.z[1]);
  const float64x2_t z2 = vdupq_n_f64(args.z[2]);
  const float64x2_t invArea = vdupq_n_f64(args.invArea2);
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t one = vdupq_n_f64(1.0);
  int64x2_t e0 = {args.e[0], args.e[0] + args.de[0]};
  int64x2_t e1 = {args.e[1], args.e[1] + args.de[1]};
  int64x2_t e2 = {args.e[2], args.e[2] + args.de[2]};
  const int64x2_t se0 = vdupq_n_s64(2 * args.de[0]);
  const int64x2_t se1 = vdupq_n_s64(2 * args.de[1]);
  const int64x2_t se2 = vdupq_n_s64(2 * args.de[2]);
  const int64x2_t t0 = vdupq_n_s64(args.t[0]);
  const int64x2_t t1 = vdupq_n_s64(args.t[1]);
  const int64x2_t t2 = vdupq_n_s64(args.t[2]);

  int i = 0;
  for (; i + 2 <= count; i += 2) {
    const uint64x2_t ok = vandq_u64(
        vandq_u64(vcgeq_s64(e0, t0), vcgeq_s64(e1, t1)), vcgeq_s64(e2, t2));
    cov[i + 0] = static_cast<std::uint8_t>(vgetq_lane_u64(ok, 0) & 1);
    cov[i + 1] = static_cast<std::uint8_t>(vgetq_lane_u64(ok, 1) & 1);

    const float64x2_t s =
        vaddq_f64(vaddq_f64(vmulq_f64(vcvtq_f64_s64(e0), z0),
                            vmulq_f64(vcvtq_f64_s64(e1), z1)),
                  vmulq_f64(vcvtq_f64_s64(e2), z2));
    float64x2_t d = vmulq_f64(s, invArea);
    d = vmaxq_f64(d, zero);
    d = vminq_f64(d, one);
    const float32x2_t df = vcvt_f32_f64(d);
    vst1_f32(depth + i, df);

    e0 = vaddq_s64(e0, se0);
    e1 = vaddq_s64(e1, se1);
    e2 = vaddq_s64(e2, se2);
  }
  if (i < count) {
    CoverageSpanArgs tail = args;
    tail.e[0] = args.e[0] + i * args.de[0];
    tail.e[1] = args.e[1] + i * args.de[1];
    tail.e[2] = args.e[2] + i * args.de[2];
    scalar_table().coverage_span(tail, count - i, cov + i, depth + i);
  }
}

void fill_f32_neon(float* dst, float value, std::size_t count) {
  const float32x4_t v = vdupq_n_f32(value);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) vst1q_f32(dst + i, v);
  for (; i < count; ++i) dst[i] = value;
}

void fill_u32_neon(std::uint32_t* dst, std::uint32_t value,
                   std::size_t count) {
  const uint32x4_t v = vdupq_n_u32(value);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) vst1q_u32(dst + i, v);
  for (; i < count; ++i) dst[i] = value;
}

std::uint64_t ray_tri_hits_neon(const RayPlan& ray, const TriSoA& tris,
                                int first, int count) {
  const double* compA[3] = {tris.x[0], tris.y[0], tris.z[0]};
  const double* compB[3] = {tris.x[1], tris.y[1], tris.z[1]};
  const double* compC[3] = {tris.x[2], tris.y[2], tris.z[2]};
  const int kx = ray.kx, ky = ray.ky, kz = ray.kz;
  const float64x2_t orgKx = vdupq_n_f64(ray.org[kx]);
  const float64x2_t orgKy = vdupq_n_f64(ray.org[ky]);
  const float64x2_t orgKz = vdupq_n_f64(ray.org[kz]);
  const float64x2_t sx = vdupq_n_f64(ray.sx);
  const float64x2_t sy = vdupq_n_f64(ray.sy);
  const float64x2_t sz = vdupq_n_f64(ray.sz);
  const float64x2_t tMax = vdupq_n_f64(ray.tMax);
  const float64x2_t zero = vdupq_n_f64(0.0);

  std::uint64_t mask = 0;
  int i = 0;
  for (; i + 2 <= count; i += 2) {
    const int t = first + i;
    const float64x2_t akz = vsubq_f64(vld1q_f64(compA[kz] + t), orgKz);
    const float64x2_t bkz = vsubq_f64(vld1q_f64(compB[kz] + t), orgKz);
    const float64x2_t ckz = vsubq_f64(vld1q_f64(compC[kz] + t), orgKz);
    const float64x2_t ax = vsubq_f64(
        vsubq_f64(vld1q_f64(compA[kx] + t), orgKx), vmulq_f64(sx, akz));
    const float64x2_t ay = vsubq_f64(
        vsubq_f64(vld1q_f64(compA[ky] + t), orgKy), vmulq_f64(sy, akz));
    const float64x2_t bx = vsubq_f64(
        vsubq_f64(vld1q_f64(compB[kx] + t), orgKx), vmulq_f64(sx, bkz));
    const float64x2_t by = vsubq_f64(
        vsubq_f64(vld1q_f64(compB[ky] + t), orgKy), vmulq_f64(sy, bkz));
    const float64x2_t cx = vsubq_f64(
        vsubq_f64(vld1q_f64(compC[kx] + t), orgKx), vmulq_f64(sx, ckz));
    const float64x2_t cy = vsubq_f64(
        vsubq_f64(vld1q_f64(compC[ky] + t), orgKy), vmulq_f64(sy, ckz));

    const float64x2_t u = vsubq_f64(vmulq_f64(cx, by), vmulq_f64(cy, bx));
    const float64x2_t v = vsubq_f64(vmulq_f64(ax, cy), vmulq_f64(ay, cx));
    const float64x2_t w = vsubq_f64(vmulq_f64(bx, ay), vmulq_f64(by, ax));

    const uint64x2_t allGe = vandq_u64(
        vandq_u64(vcgeq_f64(u, zero), vcgeq_f64(v, zero)), vcgeq_f64(w, zero));
    const uint64x2_t allLe = vandq_u64(
        vandq_u64(vcleq_f64(u, zero), vcleq_f64(v, zero)), vcleq_f64(w, zero));
    const uint64x2_t sameSign = vorrq_u64(allGe, allLe);

    const float64x2_t det = vaddq_f64(vaddq_f64(u, v), w);
    const uint64x2_t detNZ =
        veorq_u64(vceqq_f64(det, zero), vdupq_n_u64(~0ull));
    const float64x2_t tz =
        vaddq_f64(vaddq_f64(vmulq_f64(u, vmulq_f64(sz, akz)),
                            vmulq_f64(v, vmulq_f64(sz, bkz))),
                  vmulq_f64(w, vmulq_f64(sz, ckz)));
    const float64x2_t bound = vmulq_f64(tMax, det);
    const uint64x2_t hitPos = vandq_u64(
        vcgtq_f64(det, zero),
        vandq_u64(vcgtq_f64(tz, zero), vcltq_f64(tz, bound)));
    const uint64x2_t hitNeg = vandq_u64(
        vcltq_f64(det, zero),
        vandq_u64(vcltq_f64(tz, zero), vcgtq_f64(tz, bound)));
    const uint64x2_t hit =
        vandq_u64(sameSign, vandq_u64(detNZ, vorrq_u64(hitPos, hitNeg)));
    mask |= (vgetq_lane_u64(hit, 0) & 1ull) << i;
    mask |= (vgetq_lane_u64(hit, 1) & 1ull) << (i + 1);
  }
  if (i < count)
    mask |= ray_tri_hits_scalar(ray, tris, first + i, count - i) << i;
  return mask;
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table = {
      "neon",
      coverage_span_neon,
      scalar_table().stencil_span,
      fill_f32_neon,
      fill_u32_neon,
      ray_tri_hits_neon,
  };
  return table;
}

}  // namespace sv::kernels

#endif  // aarch64
