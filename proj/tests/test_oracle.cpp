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

#include <array>
#include <cmath>
#include <queue>
#include <random>
#include <utility>
#include <vector>

#include "sv/hgeom.hpp"
#include "sv/mesh.hpp"
#include "sv/oracle.hpp"
#include "sv/pipeline.hpp"
#include "sv/primitives.hpp"
#include "sv/scene.hpp"

using namespace sv;

namespace {

OccluderSet single(const TriMesh& mesh) {
  std::vector<TriMesh> v{mesh};
  return OccluderSet(v);
}

const Vec3 kUp{0.0, 1.0, 0.0};

}  // namespace

TEST_CASE("shadow rays classify points around a cube") {
  const OccluderSet occ = single(unit_cube());
  const HVec4 above{0.0, 5.0, 0.0, 1.0};

  // Below the cube, light above: the segment pierces bottom and top faces.
  // The (0, -1, 0) ray runs exactly along the shared face diagonals, which
  // must still register as occluded (watertight, no crack)...
  CHECK(occ.occluded({0.0, -1.0, 0.0}, kUp, above));
  CHECK(shadow_ray_test({0.0, -1.0, 0.0}, kUp, above, occ) ==
        ShadowState::Shadowed);
  // ...while exact crossing counts are only meaningful for generic rays that
  // stay off triangle edges (an edge hit shows up in both neighbors).
  const Vec3 generic{0.13, -1.0, 0.07};
  CHECK(occ.depth_count(generic, kUp, above) == 2);
  CHECK(occ.containing_count(generic, kUp, above) == 1);
  CHECK(shadow_depth_count(generic, kUp, above, occ) == 1);

  // Off to the side: nothing in the way.
  CHECK_FALSE(occ.occluded({2.0, -1.0, 0.0}, kUp, above));
  CHECK(occ.depth_count({2.0, -1.0, 0.0}, kUp, above) == 0);
  CHECK(shadow_ray_test({2.0, -1.0, 0.0}, kUp, above, occ) == ShadowState::Lit);

  // A light inside the cube: the segment crosses one face only.
  const HVec4 inside{0.0, 0.0, 0.0, 1.0};
  CHECK(occ.depth_count(generic, kUp, inside) == 1);
  CHECK(occ.occluded({0.0, -1.0, 0.0}, kUp, inside));

  // Directional light: unbounded ray along light.xyz.
  const HVec4 sunUp{0.0, 1.0, 0.0, 0.0};
  CHECK(occ.occluded({0.0, -1.0, 0.0}, kUp, sunUp));
  CHECK_FALSE(occ.occluded({0.0, 1.0, 0.0}, kUp, sunUp));  // above the cube

  // A positional light expressed with w != 1 means light.xyz / light.w.
  const HVec4 scaled{0.0, 10.0, 0.0, 2.0};
  CHECK(occ.depth_count(generic, kUp, scaled) == 2);
}

TEST_CASE("the normal offset prevents self-shadowing") {
  const OccluderSet occ = single(unit_cube());
  // Off-center so the ray to the light above stays clear of triangle edges.
  const Vec3 onBottom{0.11, -0.5, 0.03};
  const Vec3 down{0.0, -1.0, 0.0};
  // Light below, point on the bottom face: the face the point lies on must
  // not occlude it.
  CHECK(shadow_ray_test(onBottom, down, {0.0, -3.0, 0.0, 1.0}, occ) ==
        ShadowState::Lit);
  // Light above the cube: the cube itself blocks its own underside.
  CHECK(shadow_ray_test(onBottom, down, {0.0, 5.0, 0.0, 1.0}, occ) ==
        ShadowState::Shadowed);
  CHECK(occ.depth_count(onBottom, down, {0.0, 5.0, 0.0, 1.0}) == 2);
}

TEST_CASE("a point coinciding with its positional light counts as lit") {
  const OccluderSet occ = single(unit_cube());
  const Vec3 at{0.0, 3.0, 0.0};
  CHECK_FALSE(occ.occluded(at, Vec3{0.0, 0.0, 0.0}, {0.0, 3.0, 0.0, 1.0}));
}

TEST_CASE("nested spheres separate crossing depth from containment depth") {
  const HMat4 outerXf = mat_translate({0.0, 1.6, 0.0}) * mat_scale({2.4, 2.4, 2.4});
  const HMat4 innerXf = mat_translate({0.0, 1.6, 0.0}) * mat_scale({1.2, 1.2, 1.2});
  std::vector<TriMesh> meshes{transform_mesh(icosphere(2), outerXf),
                              transform_mesh(icosphere(1), innerXf)};
  const OccluderSet occ(meshes);
  CHECK(occ.mesh_count() == 2);
  const HVec4 light{0.5, 6.5, 0.3, 1.0};

  // Under both spheres: the ray crosses four surfaces of two meshes.
  CHECK(occ.depth_count({0.0, 0.0, 0.0}, kUp, light) == 4);
  CHECK(occ.containing_count({0.0, 0.0, 0.0}, kUp, light) == 2);
  CHECK(shadow_depth_count({0.0, 0.0, 0.0}, kUp, light, occ) == 2);

  // Under the outer sphere only.
  CHECK(occ.depth_count({0.8, 0.0, 0.0}, kUp, light) == 2);
  CHECK(occ.containing_count({0.8, 0.0, 0.0}, kUp, light) == 1);

  // In the open.
  CHECK(occ.depth_count({8.0, 0.0, 0.0}, kUp, light) == 0);
  CHECK(occ.containing_count({8.0, 0.0, 0.0}, kUp, light) == 0);
}

TEST_CASE("occlusion, crossing count and containment count are consistent") {
  std::vector<TriMesh> meshes{
      transform_mesh(unit_cube(), mat_translate({-1.5, 0.5, 0.0})),
      transform_mesh(unit_tetrahedron(), mat_translate({1.5, 0.5, 0.0})),
      transform_mesh(icosphere(1), mat_translate({0.0, 0.5, 1.5}))};
  const OccluderSet occ(meshes);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 300; ++i) {
    const Vec3 p{u(rng), -0.2, u(rng)};
    const HVec4 light = (i % 2 == 0)
                            ? HVec4{u(rng), 6.0, u(rng), 1.0}
                            : HVec4{u(rng) * 0.1, 1.0, u(rng) * 0.1, 0.0};
    const bool occluded = occ.occluded(p, kUp, light);
    const int crossings = occ.depth_count(p, kUp, light);
    const int containing = occ.containing_count(p, kUp, light);
    CHECK(occluded == (crossings >= 1));
    CHECK(occluded == (containing >= 1));
    CHECK(containing <= crossings);
    CHECK(containing <= static_cast<int>(occ.mesh_count()));
  }
}

TEST_CASE("directional lights ignore the magnitude of the direction") {
  std::vector<TriMesh> meshes{
      transform_mesh(unit_cube(), mat_translate({0.0, 1.0, 0.0})),
      transform_mesh(icosphere(2), mat_translate({1.0, 2.0, 0.5}))};
  const OccluderSet occ(meshes);
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  const HVec4 sun{0.3, 1.0, 0.15, 0.0};
  const HVec4 sunScaled = sun * 2.75;
  for (int i = 0; i < 200; ++i) {
    const Vec3 p{u(rng), 0.0, u(rng)};
    CHECK(occ.occluded(p, kUp, sun) == occ.occluded(p, kUp, sunScaled));
    CHECK(occ.depth_count(p, kUp, sun) == occ.depth_count(p, kUp, sunScaled));
  }
}

TEST_CASE("closest_hit returns the nearest surface and its normal") {
  std::vector<TriMesh> meshes{
      transform_mesh(unit_cube(), mat_translate({0.0, 0.0, -2.0})),
      transform_mesh(unit_cube(), mat_translate({0.0, 0.0, -5.0}))};
  const OccluderSet occ(meshes);
  double t = 0.0;
  Vec3 n;
  REQUIRE(occ.closest_hit({0.0, 0.0, 0.0}, {0.0, 0.0, -1.0}, t, n));
  CHECK(t == doctest::Approx(1.5));  // front face of the nearer cube
  const Vec3 nu = normalize(n);
  CHECK(std::abs(nu.z) == doctest::Approx(1.0));
  CHECK_FALSE(occ.closest_hit({0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, t, n));
}

TEST_CASE("reference mask marks empty views as no-geometry") {
  Scene scene;
  scene.meshes.push_back({transform_mesh(unit_plane(), mat_scale({20.0, 1.0, 20.0})),
                          Material{}, false, "floor"});
  scene.lights.push_back({{0.0, 5.0, 0.0, 1.0}, {1.0, 1.0, 1.0}});
  scene.camera.eye = {0.0, 2.0, 0.0};
  scene.camera.lookAt = {0.0, 10.0, 0.0};  // straight up, away from the floor
  scene.camera.up = {0.0, 0.0, -1.0};
  const ShadowMask mask = reference_mask(scene, 0, 16, 16,
                                         VisibilitySource::IndependentRays,
                                         nullptr);
  for (ShadowState s : mask.values) CHECK(s == ShadowState::NoGeometry);
}

TEST_CASE("a casterless scene is fully lit wherever geometry shows") {
  Scene scene;
  scene.meshes.push_back({transform_mesh(unit_plane(), mat_scale({20.0, 1.0, 20.0})),
                          Material{}, false, "floor"});
  scene.lights.push_back({{0.0, 5.0, 0.0, 1.0}, {1.0, 1.0, 1.0}});
  scene.camera.eye = {0.0, 2.0, 5.0};
  scene.camera.lookAt = {0.0, 0.0, 0.0};
  const ShadowMask mask = reference_mask(scene, 0, 32, 32,
                                         VisibilitySource::IndependentRays,
                                         nullptr);
  int lit = 0, shadowed = 0, none = 0;
  for (ShadowState s : mask.values) {
    if (s == ShadowState::Lit) ++lit;
    if (s == ShadowState::Shadowed) ++shadowed;
    if (s == ShadowState::NoGeometry) ++none;
  }
  CHECK(lit > 0);
  CHECK(shadowed == 0);
  CHECK(none > 0);  // the horizon is in view
}

TEST_CASE("mask_from_stencil maps zero to lit and nonzero to shadowed") {
  VisiblePointBuffer visible;
  visible.reset(2, 2);
  visible.covered[0] = 1;
  visible.covered[3] = 1;
  const std::uint32_t stencil[4] = {0, 9, 9, 3};
  const ShadowMask mask = mask_from_stencil(stencil, visible);
  CHECK(mask.at(0, 0) == ShadowState::Lit);
  CHECK(mask.at(1, 0) == ShadowState::NoGeometry);  // not covered
  CHECK(mask.at(0, 1) == ShadowState::NoGeometry);
  CHECK(mask.at(1, 1) == ShadowState::Shadowed);
}

TEST_CASE("mask comparison separates interior from boundary disagreements") {
  ShadowMask reference(7, 7);
  for (ShadowState& s : reference.values) s = ShadowState::Lit;
  reference.set(3, 3, ShadowState::Shadowed);

  ShadowMask rendered = reference;
  rendered.set(1, 1, ShadowState::Shadowed);  // interior flip
  rendered.set(2, 3, ShadowState::Shadowed);  // next to the state change
  rendered.set(5, 5, ShadowState::NoGeometry);

  const MaskDiff diff = compare_shadow_masks(rendered, reference);
  CHECK(diff.comparablePixels == 48);
  CHECK(diff.mismatches == 2);
  CHECK(diff.boundaryMismatches == 1);
  CHECK(diff.interiorMismatches() == 1);
  // Boundary: the 24-pixel image border plus the 3x3 block around the
  // shadowed pixel; the incomparable pixel at (5, 5) is in neither set.
  CHECK(diff.boundaryPixels == 33);
}

namespace {

// Scene: floating tetrahedron over a wide floor, lit by a point light. The
// camera is placed so the tetrahedron's screen footprint stays clear of the
// shadow, which must then be exactly the projection of the four vertices
// through the light onto the floor.
Scene tetra_floor_scene() {
  Scene scene;
  scene.meshes.push_back({transform_mesh(unit_plane(), mat_scale({20.0, 1.0, 20.0})),
                          Material{}, false, "floor"});
  scene.meshes.push_back(
      {transform_mesh(unit_tetrahedron(),
                      mat_translate({0.0, 1.0, 0.0}) *
                          mat_scale({1.6, 1.6, 1.6})),
       Material{}, true, "tetra"});
  scene.lights.push_back({{2.5, 5.0, 1.5, 1.0}, {1.0, 1.0, 1.0}});
  scene.ambient = {0.1, 0.1, 0.1};
  scene.camera.eye = {-4.5, 3.5, -5.0};
  scene.camera.lookAt = {-0.9, 0.0, -0.6};
  scene.camera.frustum.fovY = 55.0 * 3.14159265358979323846 / 180.0;
  scene.camera.frustum.aspect = 1.0;
  scene.camera.frustum.near = 0.1;
  scene.camera.frustum.far = 100.0;
  return scene;
}

// Even-odd point-in-polygon in 2D.
bool in_polygon(const std::vector<std::array<double, 2>>& poly, double px,
                double py) {
  bool inside = false;
  for (size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const bool crosses = (poly[i][1] > py) != (poly[j][1] > py);
    if (!crosses) continue;
    const double xAt = poly[j][0] + (poly[i][0] - poly[j][0]) *
                                        (py - poly[j][1]) /
                                        (poly[i][1] - poly[j][1]);
    if (px < xAt) inside = !inside;
  }
  return inside;
}

}  // namespace

TEST_CASE("the oracle shadow matches the analytic projection of the caster") {
  const Scene scene = tetra_floor_scene();
  const int W = 220, H = 220;

  PipelineModes modes;
  modes.width = W;
  modes.height = H;
  const FrameResult frame = render_frame(scene, modes);
  const ShadowMask mask = reference_mask(scene, 0, W, H,
                                         VisibilitySource::RendererPoints,
                                         &frame.visible);

  // Project the four tetrahedron vertices through the light onto y = 0,
  // then carry the corners into eye space where the pixel records live.
  const HMat4 view =
      look_at(scene.camera.eye, scene.camera.lookAt, scene.camera.up);
  const Vec3 L{2.5, 5.0, 1.5};
  std::vector<Vec3> cornersWorld;
  for (const HVec4& hv : scene.meshes[1].mesh.vertices) {
    const Vec3 v = hv.xyz();
    const double s = L.y / (L.y - v.y);
    cornersWorld.push_back(L + (v - L) * s);
  }
  // Convex order worked out from the fixed geometry: B, A, D, C.
  const std::vector<size_t> order{1, 0, 3, 2};
  std::vector<Vec3> cornersEye;
  for (size_t k : order)
    cornersEye.push_back(transform(view, {cornersWorld[k], 1.0}).xyz());

  // The floor normal in eye space picks both the floor pixels and the 2D
  // projection plane (drop its dominant axis).
  const Vec3 nEye = normalize(transform(view, {0.0, 1.0, 0.0, 0.0}).xyz());
  int drop = 0;
  double best = std::abs(nEye.x);
  if (std::abs(nEye.y) > best) { drop = 1; best = std::abs(nEye.y); }
  if (std::abs(nEye.z) > best) drop = 2;
  auto project2 = [&](const Vec3& p) -> std::array<double, 2> {
    switch (drop) {
      case 0: return {p.y, p.z};
      case 1: return {p.x, p.z};
      default: return {p.x, p.y};
    }
  };
  std::vector<std::array<double, 2>> poly;
  for (const Vec3& c : cornersEye) poly.push_back(project2(c));

  std::vector<std::uint8_t> floorShadow(static_cast<size_t>(W) * H, 0);
  int shadowCount = 0, hullCount = 0, floorCount = 0;
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      const std::size_t i = frame.visible.index(x, y);
      if (!frame.visible.covered[i]) continue;
      const Vec3 nPix = normalize(frame.visible.normal[i]);
      if (dot(nPix, nEye) < 0.999) continue;  // not the floor
      ++floorCount;
      const auto p2 = project2(frame.visible.position[i]);
      if (in_polygon(poly, p2[0], p2[1])) ++hullCount;
      if (mask.at(x, y) == ShadowState::Shadowed) {
        ++shadowCount;
        floorShadow[i] = 1;
      }
    }
  }
  CHECK(floorCount > 5000);
  CHECK(hullCount > 500);
  CHECK(std::abs(shadowCount - hullCount) <=
        std::max(1.0, 0.02 * static_cast<double>(hullCount)));

  // The shadow must be one connected blob: flood-fill the largest
  // 8-connected component of shadowed floor pixels.
  std::vector<std::uint8_t> seen(floorShadow.size(), 0);
  int largest = 0;
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      const std::size_t start = frame.visible.index(x, y);
      if (!floorShadow[start] || seen[start]) continue;
      int size = 0;
      std::queue<std::pair<int, int>> todo;
      todo.push({x, y});
      seen[start] = 1;
      while (!todo.empty()) {
        const auto [cx, cy] = todo.front();
        todo.pop();
        ++size;
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx, ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= W || ny >= H) continue;
            const std::size_t ni = frame.visible.index(nx, ny);
            if (floorShadow[ni] && !seen[ni]) {
              seen[ni] = 1;
              todo.push({nx, ny});
            }
          }
      }
      largest = std::max(largest, size);
    }
  }
  CHECK(largest >= static_cast<int>(0.995 * shadowCount));
}

TEST_CASE("renderer-point and independent-ray visibility agree") {
  const Scene scene = tetra_floor_scene();
  const int W = 160, H = 160;
  PipelineModes modes;
  modes.width = W;
  modes.height = H;
  const FrameResult frame = render_frame(scene, modes);
  const ShadowMask fromPoints = reference_mask(
      scene, 0, W, H, VisibilitySource::RendererPoints, &frame.visible);
  const ShadowMask fromRays = reference_mask(
      scene, 0, W, H, VisibilitySource::IndependentRays, nullptr);
  const MaskDiff diff = compare_shadow_masks(fromPoints, fromRays);
  CHECK(diff.comparablePixels > 10000);
  CHECK(diff.interiorMismatches() == 0);
}
