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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sv/error.hpp"
#include "sv/hgeom.hpp"

using namespace sv;

namespace {
constexpr double kPi = 3.14159265358979323846;

Vec3 transform_point(const HMat4& m, const Vec3& p) {
  const HVec4 r = transform(m, {p, 1.0});
  return {r.x / r.w, r.y / r.w, r.z / r.w};
}
}  // namespace

TEST_CASE("vector ops") {
  const Vec3 a{1.0, 2.0, 3.0}, b{-2.0, 0.5, 4.0};
  CHECK(dot(a, b) == doctest::Approx(-2.0 + 1.0 + 12.0));
  const Vec3 c = cross(a, b);
  // Orthogonal to both inputs.
  CHECK(dot(c, a) == doctest::Approx(0.0));
  CHECK(dot(c, b) == doctest::Approx(0.0));
  CHECK(length(Vec3{3.0, 4.0, 0.0}) == doctest::Approx(5.0));
  const Vec3 n = normalize(a);
  CHECK(length(n) == doctest::Approx(1.0));
}

TEST_CASE("matrix multiply and identity") {
  const HMat4 id = HMat4::identity();
  const HMat4 t = mat_translate({1.0, -2.0, 3.0});
  const HMat4 s = mat_scale({2.0, 2.0, 2.0});
  const HVec4 p{1.0, 1.0, 1.0, 1.0};

  CHECK(transform(id, p).x == 1.0);
  // (s * t) applies t first, then s.
  const HVec4 q = transform(s * t, p);
  CHECK(q.x == doctest::Approx(4.0));
  CHECK(q.y == doctest::Approx(-2.0));
  CHECK(q.z == doctest::Approx(8.0));
  // Matrix product against explicit double transform.
  const HVec4 q2 = transform(s, transform(t, p));
  CHECK(q.x == doctest::Approx(q2.x));
  CHECK(q.y == doctest::Approx(q2.y));
  CHECK(q.z == doctest::Approx(q2.z));
}

TEST_CASE("rotations are right-handed") {
  const HMat4 ry = mat_rotate_y(kPi / 2.0);
  const Vec3 r = transform_point(ry, {1.0, 0.0, 0.0});
  CHECK(r.x == doctest::Approx(0.0));
  CHECK(r.z == doctest::Approx(-1.0));
  const HMat4 rz = mat_rotate_z(kPi / 2.0);
  const Vec3 r2 = transform_point(rz, {1.0, 0.0, 0.0});
  CHECK(r2.y == doctest::Approx(1.0));
  const HMat4 rx = mat_rotate_x(kPi / 2.0);
  const Vec3 r3 = transform_point(rx, {0.0, 1.0, 0.0});
  CHECK(r3.z == doctest::Approx(1.0));
}

TEST_CASE("look_at maps eye to origin looking down -z") {
  const Vec3 eye{1.0, 2.0, 3.0};
  const HMat4 v = look_at(eye, {0.0, 0.0, 0.0}, {0.0, 1.0, 0.0});
  const Vec3 o = transform_point(v, eye);
  CHECK(o.x == doctest::Approx(0.0));
  CHECK(o.y == doctest::Approx(0.0));
  CHECK(o.z == doctest::Approx(0.0));
  const Vec3 t = transform_point(v, {0.0, 0.0, 0.0});
  CHECK(t.x == doctest::Approx(0.0));
  CHECK(t.y == doctest::Approx(0.0));
  CHECK(t.z == doctest::Approx(-3.7416573867739413));  // -sqrt(14)

  // Rigid: pairwise distances preserved.
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 20; ++i) {
    const Vec3 p{u(rng), u(rng), u(rng)}, q{u(rng), u(rng), u(rng)};
    CHECK(length(transform_point(v, p) - transform_point(v, q)) ==
          doctest::Approx(length(p - q)));
  }
  // World up keeps a positive y component in view space. The camera up is
  // tilted toward the eye ray, shrinking the component to
  // u_y = sqrt(1 - eye_y^2 / |eye|^2) = sqrt(10/14).
  const Vec3 upProbe = transform_point(v, eye + Vec3{0.0, 1.0, 0.0});
  CHECK(upProbe.y == doctest::Approx(std::sqrt(10.0 / 14.0)));
}

TEST_CASE("finite perspective matrix entries") {
  FrustumParams p;
  p.fovY = 1.0;
  p.aspect = 1.25;
  p.near = 0.1;
  p.far = 50.0;
  const HMat4 m = perspective_finite(p);
  const double f = 1.0 / std::tan(0.5);
  CHECK(m.m[0][0] == doctest::Approx(f / 1.25).epsilon(1e-14));
  CHECK(m.m[1][1] == doctest::Approx(f).epsilon(1e-14));
  CHECK(m.m[2][2] == doctest::Approx(-50.1 / 49.9).epsilon(1e-14));
  CHECK(m.m[2][3] == doctest::Approx(-10.0 / 49.9).epsilon(1e-14));
  CHECK(m.m[3][2] == -1.0);
  CHECK(m.m[3][3] == 0.0);

  // A point on the near plane maps to ndc z = -1 exactly: z_clip evaluates
  // as near - 2*near with both terms exact.
  const HVec4 nearPt = transform(m, {0.0, 0.0, -0.1, 1.0});
  CHECK(nearPt.z / nearPt.w == -1.0);
  const HVec4 farPt = transform(m, {0.0, 0.0, -50.0, 1.0});
  CHECK(farPt.z / farPt.w == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("infinite perspective pushes the far plane to infinity") {
  FrustumParams p;
  p.fovY = 1.0;
  p.aspect = 1.25;
  p.near = 0.1;
  p.far = FrustumParams::kInfiniteFar;
  const HMat4 m = perspective_infinite(p);
  CHECK(m.m[2][2] == -1.0);
  CHECK(m.m[2][3] == -0.2);  // -2 * near, exact for near = 0.1
  CHECK(m.m[3][2] == -1.0);

  const HVec4 nearPt = transform(m, {0.0, 0.0, -0.1, 1.0});
  CHECK(nearPt.z / nearPt.w == -1.0);

  // Any direction at infinity in front of the camera lands exactly on the
  // far plane: z_clip = -z = w_clip, so ndc z == 1.0 with no rounding.
  const HVec4 axis = transform(m, {0.0, 0.0, -1.0, 0.0});
  CHECK(axis.z / axis.w == 1.0);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::uniform_real_distribution<double> uz(-9.0, -0.1);
  for (int i = 0; i < 200; ++i) {
    const HVec4 dir{u(rng), u(rng), uz(rng), 0.0};
    const HVec4 c = transform(m, dir);
    CHECK(c.z / c.w == 1.0);
    CHECK(c.z == c.w);
  }
}

TEST_CASE("infinite projection is exact across random frustums") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> fov(0.2, 2.8);
  std::uniform_real_distribution<double> asp(0.3, 3.0);
  std::uniform_real_distribution<double> nr(1e-3, 10.0);
  for (int i = 0; i < 100; ++i) {
    FrustumParams p;
    p.fovY = fov(rng);
    p.aspect = asp(rng);
    p.near = nr(rng);
    p.far = FrustumParams::kInfiniteFar;
    const HMat4 m = perspective_infinite(p);
    const HVec4 c = transform(m, {0.0, 0.0, -1.0, 0.0});
    CHECK(c.z / c.w == 1.0);
  }
}

TEST_CASE("depth compression factor") {
  CHECK(depth_compression_factor(1.0, 100.0) == 0.99);
  CHECK(depth_compression_factor(1.0, 2.0) == 0.5);
  CHECK(depth_compression_factor(0.1, 100.0) ==
        doctest::Approx(0.999).epsilon(1e-15));
  // The retained fraction is 1 - near/far: it approaches 1 as the far plane
  // recedes, so pushing it to infinity costs almost nothing.
  CHECK(depth_compression_factor(1.0, 1e6) ==
        doctest::Approx(1.0 - 1e-6).epsilon(1e-15));
}

TEST_CASE("plane from triangle") {
  const Plane pl = plane_from_triangle({1.0, 0.0, 0.0, 1.0},
                                       {0.0, 1.0, 0.0, 1.0},
                                       {0.0, 0.0, 1.0, 1.0});
  // All three corners lie on the plane.
  CHECK(pl.eval({1.0, 0.0, 0.0, 1.0}) == doctest::Approx(0.0));
  CHECK(pl.eval({0.0, 1.0, 0.0, 1.0}) == doctest::Approx(0.0));
  CHECK(pl.eval({0.0, 0.0, 1.0, 1.0}) == doctest::Approx(0.0));
  // Front side faces away from the origin for this winding.
  CHECK(pl.eval({1.0, 1.0, 1.0, 1.0}) > 0.0);
  CHECK(pl.eval({0.0, 0.0, 0.0, 1.0}) < 0.0);
  // Directional evaluation: a direction along the normal is in front.
  CHECK(pl.eval({1.0, 1.0, 1.0, 0.0}) > 0.0);
}

TEST_CASE("frustum validation") {
  FrustumParams p;
  p.fovY = 1.0;
  p.aspect = 1.0;
  p.near = 0.1;
  p.far = 100.0;
  CHECK_NOTHROW(validate_frustum(p));
  p.far = FrustumParams::kInfiniteFar;
  CHECK_NOTHROW(validate_frustum(p));

  FrustumParams bad = p;
  bad.fovY = 0.0;
  CHECK_THROWS_AS(validate_frustum(bad), ParamError);
  bad = p;
  bad.fovY = kPi;
  CHECK_THROWS_AS(validate_frustum(bad), ParamError);
  bad = p;
  bad.aspect = 0.0;
  CHECK_THROWS_AS(validate_frustum(bad), ParamError);
  bad = p;
  bad.near = 0.0;
  CHECK_THROWS_AS(validate_frustum(bad), ParamError);
  bad = p;
  bad.far = 0.05;  // far in front of near
  CHECK_THROWS_AS(validate_frustum(bad), ParamError);
  bad = p;
  bad.far = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate_frustum(bad), ParamError);
}
