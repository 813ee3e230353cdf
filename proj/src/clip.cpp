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
#include "sv/clip.hpp"

namespace sv {

namespace {

struct ClipPlane {
  HVec4 coef;
  double bias = 0.0;

  double dist(const HVec4& p) const { return dot(coef, p) + bias; }
};

bool pos_less(const HVec4& a, const HVec4& b) {
  if (a.x != b.x) return a.x < b.x;
  if (a.y != b.y) return a.y < b.y;
  if (a.z != b.z) return a.z < b.z;
  return a.w < b.w;
}

ClipVertex lerp_vertex(const ClipVertex& r, const ClipVertex& s, double t) {
  ClipVertex out;
  out.position = {r.position.x + t * (s.position.x - r.position.x),
                  r.position.y + t * (s.position.y - r.position.y),
                  r.position.z + t * (s.position.z - r.position.z),
                  r.position.w + t * (s.position.w - r.position.w)};
  for (int k = 0; k < kMaxVaryings; ++k)
    out.varying[static_cast<size_t>(k)] =
        r.varying[static_cast<size_t>(k)] +
        t * (s.varying[static_cast<size_t>(k)] -
             r.varying[static_cast<size_t>(k)]);
  return out;
}

void clip_against(std::vector<ClipVertex>& poly,
                  std::vector<ClipVertex>& scratch, const ClipPlane& plane) {
  if (poly.size() < 3) {
    poly.clear();
    return;
  }
  scratch.clear();
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const ClipVertex& cur = poly[i];
    const ClipVertex& nxt = poly[(i + 1) % n];
    const double dc = plane.dist(cur.position);
    const double dn = plane.dist(nxt.position);
    const bool inC = dc >= 0.0;
    const bool inN = dn >= 0.0;
    if (inC) scratch.push_back(cur);
    if (inC != inN) {
      // Canonical endpoint order: both triangles sharing this edge compute
      // the boundary vertex from the same operands.
      const ClipVertex* p = &cur;
      const ClipVertex* q = &nxt;
      double dp = dc, dq = dn;
      if (pos_less(q->position, p->position)) {
        p = &nxt;
        q = &cur;
        dp = dn;
        dq = dc;
      }
      scratch.push_back(lerp_vertex(*p, *q, dp / (dp - dq)));
    }
  }
  poly.swap(scratch);
  if (poly.size() < 3) poly.clear();
}

}  // namespace

std::vector<ClipVertex> clip_triangle(const ClipVertex& v0,
                                      const ClipVertex& v1,
                                      const ClipVertex& v2, bool depthClamp) {
  std::vector<ClipVertex> poly{v0, v1, v2};
  std::vector<ClipVertex> scratch;
  poly.reserve(10);
  scratch.reserve(10);

  if (depthClamp) {
    clip_against(poly, scratch, {{0, 0, 0, 1}, -kWClipGuard});
  } else {
    clip_against(poly, scratch, {{0, 0, 1, 1}, 0.0});   // near: z >= -w
    clip_against(poly, scratch, {{0, 0, -1, 1}, 0.0});  // far: z <= w
  }
  clip_against(poly, scratch, {{1, 0, 0, 1}, 0.0});
  clip_against(poly, scratch, {{-1, 0, 0, 1}, 0.0});
  clip_against(poly, scratch, {{0, 1, 0, 1}, 0.0});
  clip_against(poly, scratch, {{0, -1, 0, 1}, 0.0});
  return poly;
}

}  // namespace sv
