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

// Homogeneous-coordinate math: 4-vectors with w >= 0 (w = 0 encodes points at
// infinity), 4x4 transforms, perspective matrices with finite or infinite far
// plane, and plane construction that stays valid for triangles whose vertices
// include points at infinity.

#include <cmath>
#include <limits>

namespace sv {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

constexpr Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}
constexpr Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
constexpr Vec3 operator*(const Vec3& a, double s) {
  return {a.x * s, a.y * s, a.z * s};
}
constexpr Vec3 operator*(double s, const Vec3& a) { return a * s; }
constexpr double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double length(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalize(const Vec3& a) {
  const double len = length(a);
  return len > 0.0 ? a * (1.0 / len) : Vec3{0.0, 0.0, 0.0};
}

struct HVec4 {
  double x = 0.0, y = 0.0, z = 0.0, w = 0.0;

  constexpr HVec4() = default;
  constexpr HVec4(double px, double py, double pz, double pw)
      : x(px), y(py), z(pz), w(pw) {}
  constexpr HVec4(const Vec3& v, double pw) : x(v.x), y(v.y), z(v.z), w(pw) {}

  constexpr Vec3 xyz() const { return {x, y, z}; }
};

constexpr HVec4 operator+(const HVec4& a, const HVec4& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z, a.w + b.w};
}
constexpr HVec4 operator-(const HVec4& a, const HVec4& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z, a.w - b.w};
}
constexpr HVec4 operator*(const HVec4& a, double s) {
  return {a.x * s, a.y * s, a.z * s, a.w * s};
}
constexpr double dot(const HVec4& a, const HVec4& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z + a.w * b.w;
}

// Row-major 4x4 matrix; transform(m, v) computes m * v with v a column.
struct HMat4 {
  double m[4][4] = {};

  static constexpr HMat4 identity() {
    HMat4 r;
    for (int i = 0; i < 4; ++i) r.m[i][i] = 1.0;
    return r;
  }
  constexpr HVec4 row(int i) const {
    return {m[i][0], m[i][1], m[i][2], m[i][3]};
  }
};

HMat4 operator*(const HMat4& a, const HMat4& b);
HVec4 transform(const HMat4& m, const HVec4& v);

// Plane a*x + b*y + c*z + d*w = 0; eval > 0 on the front side.
struct Plane {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  constexpr double eval(const HVec4& v) const {
    return a * v.x + b * v.y + c * v.z + d * v.w;
  }
};

// Symmetric view frustum. fovY is the full vertical field of view in radians;
// far may be kInfiniteFar.
struct FrustumParams {
  double fovY = 1.0;
  double aspect = 1.0;
  double near = 0.1;
  double far = 100.0;

  static constexpr double kInfiniteFar = std::numeric_limits<double>::infinity();
  bool infiniteFar() const { return std::isinf(far); }
};

// Throws ParamError when fovY, aspect or the depth range is out of range;
// far may be infinite.
void validate_frustum(const FrustumParams& p);

// Perspective matrix with a finite far plane; requires finite far > near > 0.
HMat4 perspective_finite(const FrustumParams& p);

// Perspective matrix whose far plane is pushed to infinity. Only the third row
// differs from perspective_finite; rows 0, 1 and 3 are identical.
HMat4 perspective_infinite(const FrustumParams& p);

// Fraction of window depth range spanned by [near, far]; approaches 1 as the
// far plane recedes, which is why an infinite far plane costs almost nothing.
double depth_compression_factor(double near, double far);

// Plane through three homogeneous points via 3x3 cofactors of the 3x4 vertex
// matrix. Works when some vertices have w = 0, where a cross-product of
// affine edge vectors would not. Winding (a, b, c) counter-clockwise seen from
// the front side yields eval > 0 in front. Throws DegeneracyError when all
// four coefficients vanish.
Plane plane_from_triangle(const HVec4& a, const HVec4& b, const HVec4& c);

// Affine transform builders for scene construction.
HMat4 mat_translate(const Vec3& t);
HMat4 mat_scale(const Vec3& s);
HMat4 mat_rotate_x(double radians);
HMat4 mat_rotate_y(double radians);
HMat4 mat_rotate_z(double radians);
// World-to-eye transform; eye looks toward `target` with `up` roughly up.
HMat4 look_at(const Vec3& eye, const Vec3& target, const Vec3& up);

}  // namespace sv
