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
#include "sv/hgeom.hpp"

#include <algorithm>
#include <cmath>

#include "sv/error.hpp"

namespace sv {

HMat4 operator*(const HMat4& a, const HMat4& b) {
  HMat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += a.m[i][k] * b.m[k][j];
      r.m[i][j] = s;
    }
  return r;
}

HVec4 transform(const HMat4& m, const HVec4& v) {
  return {dot(m.row(0), v), dot(m.row(1), v), dot(m.row(2), v),
          dot(m.row(3), v)};
}

static void check_frustum(const FrustumParams& p, bool needFiniteFar) {
  if (!(p.fovY > 0.0) || !(p.fovY < 3.14159265358979323846))
    throw ParamError("frustum: fovY must lie in (0, pi)");
  if (!(p.aspect > 0.0)) throw ParamError("frustum: aspect must be positive");
  if (!(p.near > 0.0)) throw ParamError("frustum: near must be positive");
  if (needFiniteFar) {
    if (!(std::isfinite(p.far)) || !(p.far > p.near))
      throw ParamError("frustum: far must be finite and greater than near");
  }
}

void validate_frustum(const FrustumParams& p) {
  check_frustum(p, /*needFiniteFar=*/false);
  if (!p.infiniteFar() && !(p.far > p.near))
    throw ParamError("frustum: far must be greater than near");
}

HMat4 perspective_finite(const FrustumParams& p) {
  check_frustum(p, /*needFiniteFar=*/true);
  const double t = p.near * std::tan(0.5 * p.fovY);
  const double r = t * p.aspect;
  const double n = p.near, f = p.far;
  HMat4 out;
  out.m[0][0] = p.near / r;
  out.m[1][1] = p.near / t;
  out.m[2][2] = -(f + n) / (f - n);
  out.m[2][3] = -2.0 * f * n / (f - n);
  out.m[3][2] = -1.0;
  return out;
}

HMat4 perspective_infinite(const FrustumParams& p) {
  check_frustum(p, /*needFiniteFar=*/false);
  const double t = p.near * std::tan(0.5 * p.fovY);
  const double r = t * p.aspect;
  HMat4 out;
  out.m[0][0] = p.near / r;
  out.m[1][1] = p.near / t;
  out.m[2][2] = -1.0;
  out.m[2][3] = -2.0 * p.near;
  out.m[3][2] = -1.0;
  return out;
}

double depth_compression_factor(double near, double far) {
  if (!(near > 0.0) || !(far > near))
    throw ParamError("depth_compression_factor: need 0 < near < far");
  if (std::isinf(far)) return 1.0;
  return (far - near) / far;
}

static double det3(double a0, double a1, double a2, double b0, double b1,
                   double b2, double c0, double c1, double c2) {
  return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) +
         a2 * (b0 * c1 - b1 * c0);
}

Plane plane_from_triangle(const HVec4& a, const HVec4& b, const HVec4& c) {
  Plane p;
  p.a = det3(a.y, a.z, a.w, b.y, b.z, b.w, c.y, c.z, c.w);
  p.b = -det3(a.x, a.z, a.w, b.x, b.z, b.w, c.x, c.z, c.w);
  p.c = det3(a.x, a.y, a.w, b.x, b.y, b.w, c.x, c.y, c.w);
  p.d = -det3(a.x, a.y, a.z, b.x, b.y, b.z, c.x, c.y, c.z);

  double maxCoord = 0.0;
  for (const HVec4* v : {&a, &b, &c})
    maxCoord = std::max({maxCoord, std::abs(v->x), std::abs(v->y),
                         std::abs(v->z), std::abs(v->w)});
  const double scale = 1.0 + maxCoord;
  const double tol = 1e-12 * scale * scale * scale;
  const double maxCoef =
      std::max({std::abs(p.a), std::abs(p.b), std::abs(p.c), std::abs(p.d)});
  if (maxCoef <= tol)
    throw DegeneracyError("plane_from_triangle: degenerate triangle");
  return p;
}

HMat4 mat_translate(const Vec3& t) {
  HMat4 r = HMat4::identity();
  r.m[0][3] = t.x;
  r.m[1][3] = t.y;
  r.m[2][3] = t.z;
  return r;
}

HMat4 mat_scale(const Vec3& s) {
  HMat4 r;
  r.m[0][0] = s.x;
  r.m[1][1] = s.y;
  r.m[2][2] = s.z;
  r.m[3][3] = 1.0;
  return r;
}

HMat4 mat_rotate_x(double radians) {
  HMat4 r = HMat4::identity();
  const double c = std::cos(radians), s = std::sin(radians);
  r.m[1][1] = c;
  r.m[1][2] = -s;
  r.m[2][1] = s;
  r.m[2][2] = c;
  return r;
}

HMat4 mat_rotate_y(double radians) {
  HMat4 r = HMat4::identity();
  const double c = std::cos(radians), s = std::sin(radians);
  r.m[0][0] = c;
  r.m[0][2] = s;
  r.m[2][0] = -s;
  r.m[2][2] = c;
  return r;
}

HMat4 mat_rotate_z(double radians) {
  HMat4 r = HMat4::identity();
  const double c = std::cos(radians), s = std::sin(radians);
  r.m[0][0] = c;
  r.m[0][1] = -s;
  r.m[1][0] = s;
  r.m[1][1] = c;
  return r;
}

HMat4 look_at(const Vec3& eye, const Vec3& target, const Vec3& up) {
  const Vec3 f = normalize(target - eye);
  if (length(f) == 0.0) throw ParamError("look_at: eye coincides with target");
  const Vec3 s = normalize(cross(f, up));
  if (length(s) == 0.0) throw ParamError("look_at: view direction parallel to up");
  const Vec3 u = cross(s, f);
  HMat4 r = HMat4::identity();
  r.m[0][0] = s.x;
  r.m[0][1] = s.y;
  r.m[0][2] = s.z;
  r.m[0][3] = -dot(s, eye);
  r.m[1][0] = u.x;
  r.m[1][1] = u.y;
  r.m[1][2] = u.z;
  r.m[1][3] = -dot(u, eye);
  r.m[2][0] = -f.x;
  r.m[2][1] = -f.y;
  r.m[2][2] = -f.z;
  r.m[2][3] = dot(f, eye);
  return r;
}

}  // namespace sv
