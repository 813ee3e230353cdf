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

// AVX2 kernel variants. Every floating-point expression mirrors the scalar
// reference operation for operation (no FMA, same association) so results are
// bit-identical; the equivalence suite enforces this.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "tables.hpp"

namespace sv::kernels {

namespace {

// Exact int64 -> double for |x| < 2^51 via the exponent-bias trick.
inline __m256d i64_to_f64(__m256i x) {
  const __m256i bias = _mm256_set1_epi64x(0x4338000000000000LL);
  const __m256d biasVal = _mm256_set1_pd(6755399441055744.0);  // 2^52 + 2^51
  return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_add_epi64(x, bias)), biasVal);
}

void coverage_span_avx2(const CoverageSpanArgs& args, int count,
                        std::uint8_t* cov, float* depth) {
  const __m256d z0 = _mm256_set1_pd(args.z[0]);
  const __m256d z1 = _mm256_set1_pd(args.z[1]);
  const __m256d z2 = _mm256_set1_pd(args.z[2]);
  const __m256d invArea = _mm256_set1_pd(args.invArea2);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  // Lane l starts at e + l*de; each iteration advances by 4*de.
  __m256i e0 = _mm256_setr_epi64x(args.e[0], args.e[0] + args.de[0],
                                  args.e[0] + 2 * args.de[0],
                                  args.e[0] + 3 * args.de[0]);
  __m256i e1 = _mm256_setr_epi64x(args.e[1], args.e[1] + args.de[1],
                                  args.e[1] + 2 * args.de[1],
                                  args.e[1] + 3 * args.de[1]);
  __m256i e2 = _mm256_setr_epi64x(args.e[2], args.e[2] + args.de[2],
                                  args.e[2] + 2 * args.de[2],
                                  args.e[2] + 3 * args.de[2]);
  const __m256i se0 = _mm256_set1_epi64x(4 * args.de[0]);
  const __m256i se1 = _mm256_set1_epi64x(4 * args.de[1]);
  const __m256i se2 = _mm256_set1_epi64x(4 * args.de[2]);
  const __m256i t0 = _mm256_set1_epi64x(args.t[0]);
  const __m256i t1 = _mm256_set1_epi64x(args.t[1]);
  const __m256i t2 = _mm256_set1_epi64x(args.t[2]);

  int i = 0;
  for (; i + 4 <= count; i += 4) {
    // e >= t  <=>  !(t > e)
    const __m256i lt0 = _mm256_cmpgt_epi64(t0, e0);
    const __m256i lt1 = _mm256_cmpgt_epi64(t1, e1);
    const __m256i lt2 = _mm256_cmpgt_epi64(t2, e2);
    const int miss = _mm256_movemask_pd(
        _mm256_castsi256_pd(_mm256_or_si256(_mm256_or_si256(lt0, lt1), lt2)));
    cov[i + 0] = static_cast<std::uint8_t>(~miss & 1);
    cov[i + 1] = static_cast<std::uint8_t>((~miss >> 1) & 1);
    cov[i + 2] = static_cast<std::uint8_t>((~miss >> 2) & 1);
    cov[i + 3] = static_cast<std::uint8_t>((~miss >> 3) & 1);

    const __m256d s = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(i64_to_f64(e0), z0),
                      _mm256_mul_pd(i64_to_f64(e1), z1)),
        _mm256_mul_pd(i64_to_f64(e2), z2));
    __m256d d = _mm256_mul_pd(s, invArea);
    d = _mm256_max_pd(d, zero);
    d = _mm256_min_pd(d, one);
    _mm_storeu_ps(depth + i, _mm256_cvtpd_ps(d));

    e0 = _mm256_add_epi64(e0, se0);
    e1 = _mm256_add_epi64(e1, se1);
    e2 = _mm256_add_epi64(e2, se2);
  }
  if (i < count) {
    CoverageSpanArgs tail = args;
    tail.e[0] = args.e[0] + i * args.de[0];
    tail.e[1] = args.e[1] + i * args.de[1];
    tail.e[2] = args.e[2] + i * args.de[2];
    scalar_table().coverage_span(tail, count - i, cov + i, depth + i);
  }
}

struct OpVec {
  bool isKeep;
  bool canSaturate;
  __m256i (*apply)(__m256i s, __m256i maxVal);
  __m256i (*satCond)(__m256i s, __m256i maxVal);  // lanes that would clamp
};

__m256i op_keep(__m256i s, __m256i) { return s; }
__m256i op_zero(__m256i, __m256i) { return _mm256_setzero_si256(); }
__m256i op_incr(__m256i s, __m256i maxVal) {
  // Saturate by selection, not by unsigned min: with a 32-bit stencil the
  // increment of 0xffffffff wraps to zero and min would pick the wrong side.
  const __m256i inc = _mm256_add_epi32(s, _mm256_set1_epi32(1));
  const __m256i atCeil = _mm256_cmpeq_epi32(_mm256_max_epu32(s, maxVal), s);
  return _mm256_blendv_epi8(inc, maxVal, atCeil);
}
__m256i op_decr(__m256i s, __m256i) {
  // 0 - 1 wraps to 0xffffffff, min picks the original 0: saturation at zero.
  return _mm256_min_epu32(s, _mm256_sub_epi32(s, _mm256_set1_epi32(1)));
}
__m256i op_incr_wrap(__m256i s, __m256i maxVal) {
  return _mm256_and_si256(_mm256_add_epi32(s, _mm256_set1_epi32(1)), maxVal);
}
__m256i op_decr_wrap(__m256i s, __m256i maxVal) {
  return _mm256_and_si256(_mm256_sub_epi32(s, _mm256_set1_epi32(1)), maxVal);
}
__m256i sat_none(__m256i, __m256i) { return _mm256_setzero_si256(); }
__m256i sat_at_max(__m256i s, __m256i maxVal) {
  return _mm256_cmpeq_epi32(s, maxVal);
}
__m256i sat_at_zero(__m256i s, __m256i) {
  return _mm256_cmpeq_epi32(s, _mm256_setzero_si256());
}

OpVec op_vec(StencilOp op) {
  switch (op) {
    case StencilOp::Keep: return {true, false, op_keep, sat_none};
    case StencilOp::Zero: return {false, false, op_zero, sat_none};
    case StencilOp::Incr: return {false, true, op_incr, sat_at_max};
    case StencilOp::Decr: return {false, true, op_decr, sat_at_zero};
    case StencilOp::IncrWrap: return {false, false, op_incr_wrap, sat_none};
    case StencilOp::DecrWrap: return {false, false, op_decr_wrap, sat_none};
  }
  return {true, false, op_keep, sat_none};
}

inline int mask8(__m256i m) {
  return _mm256_movemask_ps(_mm256_castsi256_ps(m));
}

void stencil_span_avx2(const StencilSpanArgs& args, int count,
                       SpanStats& stats) {
  const __m256i maxVal = _mm256_set1_epi32(static_cast<int>(args.stencilMax));
  const __m256i wm = _mm256_set1_epi32(static_cast<int>(args.writeMask));
  const __m256i cmpRef = _mm256_set1_epi32(
      static_cast<int>(args.ref & args.compareMask));
  const __m256i cmask = _mm256_set1_epi32(static_cast<int>(args.compareMask));
  const OpVec sf = op_vec(args.opStencilFail);
  const OpVec df = op_vec(args.opDepthFail);
  const OpVec dp = op_vec(args.opDepthPass);

  int i = 0;
  for (; i + 8 <= count; i += 8) {
    const __m256i covBytes = _mm256_cvtepu8_epi32(
        _mm_loadl_epi64(reinterpret_cast<const __m128i*>(args.cov + i)));
    const __m256i covMask =
        _mm256_cmpgt_epi32(covBytes, _mm256_setzero_si256());
    const int covBits = mask8(covMask);
    if (covBits == 0) continue;
    stats.fragments += static_cast<unsigned>(__builtin_popcount(covBits));

    const __m256i s = _mm256_loadu_si256(
        reinterpret_cast<const __m256i*>(args.stencil + i));

    __m256i sPass;
    if (args.func == StencilFunc::Always) {
      sPass = _mm256_set1_epi32(-1);
    } else {
      sPass = _mm256_cmpeq_epi32(cmpRef, _mm256_and_si256(s, cmask));
    }

    __m256i dPass;
    if (!args.depthTest || args.depthFunc == DepthFunc::Always) {
      dPass = _mm256_set1_epi32(-1);
    } else {
      const __m256 frag = _mm256_loadu_ps(args.fragDepth + i);
      const __m256 stored = _mm256_loadu_ps(args.storedDepth + i);
      __m256 cmp;
      switch (args.depthFunc) {
        case DepthFunc::Less: cmp = _mm256_cmp_ps(frag, stored, _CMP_LT_OQ); break;
        case DepthFunc::LessEqual: cmp = _mm256_cmp_ps(frag, stored, _CMP_LE_OQ); break;
        default: cmp = _mm256_cmp_ps(frag, stored, _CMP_EQ_OQ); break;
      }
      dPass = _mm256_castps_si256(cmp);
    }

    const __m256i laneSF = _mm256_andnot_si256(sPass, covMask);
    const __m256i laneDP =
        _mm256_and_si256(covMask, _mm256_and_si256(sPass, dPass));
    const __m256i laneDF = _mm256_and_si256(
        covMask, _mm256_andnot_si256(dPass, sPass));

    __m256i result = _mm256_andnot_si256(covMask, s);
    result = _mm256_or_si256(
        result, _mm256_and_si256(laneSF, sf.apply(s, maxVal)));
    result = _mm256_or_si256(
        result, _mm256_and_si256(laneDF, df.apply(s, maxVal)));
    result = _mm256_or_si256(
        result, _mm256_and_si256(laneDP, dp.apply(s, maxVal)));
    // (s & ~wm | r & wm) & max, applied to covered lanes only.
    __m256i merged = _mm256_or_si256(_mm256_andnot_si256(wm, s),
                                     _mm256_and_si256(wm, result));
    merged = _mm256_and_si256(merged, maxVal);
    const __m256i out = _mm256_blendv_epi8(s, merged, covMask);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(args.stencil + i), out);

    int writeBits = 0, satBits = 0;
    if (!sf.isKeep) {
      writeBits |= mask8(laneSF);
      satBits |= mask8(_mm256_and_si256(laneSF, sf.satCond(s, maxVal)));
    }
    if (!df.isKeep) {
      writeBits |= mask8(laneDF);
      satBits |= mask8(_mm256_and_si256(laneDF, df.satCond(s, maxVal)));
    }
    if (!dp.isKeep) {
      writeBits |= mask8(laneDP);
      satBits |= mask8(_mm256_and_si256(laneDP, dp.satCond(s, maxVal)));
    }
    stats.stencilWrites += static_cast<unsigned>(__builtin_popcount(writeBits));
    stats.saturations += static_cast<unsigned>(__builtin_popcount(satBits));
  }
  if (i < count) {
    StencilSpanArgs tail = args;
    tail.stencil = args.stencil + i;
    tail.storedDepth = args.storedDepth + i;
    tail.cov = args.cov + i;
    tail.fragDepth = args.fragDepth + i;
    scalar_table().stencil_span(tail, count - i, stats);
  }
}

void fill_f32_avx2(float* dst, float value, std::size_t count) {
  const __m256 v = _mm256_set1_ps(value);
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) _mm256_storeu_ps(dst + i, v);
  for (; i < count; ++i) dst[i] = value;
}

void fill_u32_avx2(std::uint32_t* dst, std::uint32_t value,
                   std::size_t count) {
  const __m256i v = _mm256_set1_epi32(static_cast<int>(value));
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8)
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), v);
  for (; i < count; ++i) dst[i] = value;
}

std::uint64_t ray_tri_hits_avx2(const RayPlan& ray, const TriSoA& tris,
                                int first, int count) {
  const double* compA[3] = {tris.x[0], tris.y[0], tris.z[0]};
  const double* compB[3] = {tris.x[1], tris.y[1], tris.z[1]};
  const double* compC[3] = {tris.x[2], tris.y[2], tris.z[2]};
  const int kx = ray.kx, ky = ray.ky, kz = ray.kz;
  const __m256d orgKx = _mm256_set1_pd(ray.org[kx]);
  const __m256d orgKy = _mm256_set1_pd(ray.org[ky]);
  const __m256d orgKz = _mm256_set1_pd(ray.org[kz]);
  const __m256d sx = _mm256_set1_pd(ray.sx);
  const __m256d sy = _mm256_set1_pd(ray.sy);
  const __m256d sz = _mm256_set1_pd(ray.sz);
  const __m256d tMax = _mm256_set1_pd(ray.tMax);
  const __m256d zero = _mm256_setzero_pd();

  std::uint64_t mask = 0;
  int i = 0;
  for (; i + 4 <= count; i += 4) {
    const int t = first + i;
    const __m256d akz = _mm256_sub_pd(_mm256_loadu_pd(compA[kz] + t), orgKz);
    const __m256d bkz = _mm256_sub_pd(_mm256_loadu_pd(compB[kz] + t), orgKz);
    const __m256d ckz = _mm256_sub_pd(_mm256_loadu_pd(compC[kz] + t), orgKz);
    const __m256d ax = _mm256_sub_pd(
        _mm256_sub_pd(_mm256_loadu_pd(compA[kx] + t), orgKx),
        _mm256_mul_pd(sx, akz));
    const __m256d ay = _mm256_sub_pd(
        _mm256_sub_pd(_mm256_loadu_pd(compA[ky] + t), orgKy),
        _mm256_mul_pd(sy, akz));
    const __m256d bx = _mm256_sub_pd(
        _mm256_sub_pd(_mm256_loadu_pd(compB[kx] + t), orgKx),
        _mm256_mul_pd(sx, bkz));
    const __m256d by = _mm256_sub_pd(
        _mm256_sub_pd(_mm256_loadu_pd(compB[ky] + t), orgKy),
        _mm256_mul_pd(sy, bkz));
    const __m256d cx = _mm256_sub_pd(
        _mm256_sub_pd(_mm256_loadu_pd(compC[kx] + t), orgKx),
        _mm256_mul_pd(sx, ckz));
    const __m256d cy = _mm256_sub_pd(
        _mm256_sub_pd(_mm256_loadu_pd(compC[ky] + t), orgKy),
        _mm256_mul_pd(sy, ckz));

    const __m256d u =
        _mm256_sub_pd(_mm256_mul_pd(cx, by), _mm256_mul_pd(cy, bx));
    const __m256d v =
        _mm256_sub_pd(_mm256_mul_pd(ax, cy), _mm256_mul_pd(ay, cx));
    const __m256d w =
        _mm256_sub_pd(_mm256_mul_pd(bx, ay), _mm256_mul_pd(by, ax));

    const __m256d allGe = _mm256_and_pd(
        _mm256_and_pd(_mm256_cmp_pd(u, zero, _CMP_GE_OQ),
                      _mm256_cmp_pd(v, zero, _CMP_GE_OQ)),
        _mm256_cmp_pd(w, zero, _CMP_GE_OQ));
    const __m256d allLe = _mm256_and_pd(
        _mm256_and_pd(_mm256_cmp_pd(u, zero, _CMP_LE_OQ),
                      _mm256_cmp_pd(v, zero, _CMP_LE_OQ)),
        _mm256_cmp_pd(w, zero, _CMP_LE_OQ));
    const __m256d sameSign = _mm256_or_pd(allGe, allLe);

    const __m256d det = _mm256_add_pd(_mm256_add_pd(u, v), w);
    const __m256d detNZ = _mm256_cmp_pd(det, zero, _CMP_NEQ_OQ);
    const __m256d tz = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(u, _mm256_mul_pd(sz, akz)),
                      _mm256_mul_pd(v, _mm256_mul_pd(sz, bkz))),
        _mm256_mul_pd(w, _mm256_mul_pd(sz, ckz)));
    const __m256d bound = _mm256_mul_pd(tMax, det);
    const __m256d hitPos = _mm256_and_pd(
        _mm256_cmp_pd(det, zero, _CMP_GT_OQ),
        _mm256_and_pd(_mm256_cmp_pd(tz, zero, _CMP_GT_OQ),
                      _mm256_cmp_pd(tz, bound, _CMP_LT_OQ)));
    const __m256d hitNeg = _mm256_and_pd(
        _mm256_cmp_pd(det, zero, _CMP_LT_OQ),
        _mm256_and_pd(_mm256_cmp_pd(tz, zero, _CMP_LT_OQ),
                      _mm256_cmp_pd(tz, bound, _CMP_GT_OQ)));
    const __m256d hit = _mm256_and_pd(
        sameSign, _mm256_and_pd(detNZ, _mm256_or_pd(hitPos, hitNeg)));
    mask |= static_cast<std::uint64_t>(_mm256_movemask_pd(hit)) << i;
  }
  if (i < count)
    mask |= ray_tri_hits_scalar(ray, tris, first + i, count - i) << i;
  return mask;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table = {
      "avx2",         coverage_span_avx2, stencil_span_avx2,
      fill_f32_avx2,  fill_u32_avx2,      ray_tri_hits_avx2,
  };
  return table;
}

}  // namespace sv::kernels

#endif  // x86-64
