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
#include "sv/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <utility>

#include "sv/error.hpp"
#include "sv/image_io.hpp"
#include "sv/kernels.hpp"

namespace sv {
namespace {

Vec3 dehomogenize(const HVec4& v) {
  if (!(v.w > 0.0))
    throw ParamError("oracle requires affine occluder vertices (w > 0)");
  if (v.w == 1.0) return {v.x, v.y, v.z};
  return {v.x / v.w, v.y / v.w, v.z / v.w};
}

Vec3 offset_origin(const Vec3& point, const Vec3& normal) {
  const double len = length(normal);
  if (!(len > 0.0)) return point;
  const double s = kShadowRayEpsilon / len;
  return {point.x + normal.x * s, point.y + normal.y * s,
          point.z + normal.z * s};
}

// Ray from `origin` toward the light. Returns false when no meaningful ray
// exists (point coincides with a positional light), which counts as lit.
bool light_ray(const Vec3& origin, const HVec4& light, Vec3& dir,
               double& tMax) {
  if (light.w > 0.0) {
    dir = Vec3{light.x / light.w, light.y / light.w, light.z / light.w} -
          origin;
    tMax = 1.0;
  } else {
    dir = {light.x, light.y, light.z};
    tMax = std::numeric_limits<double>::infinity();
  }
  return dir.x != 0.0 || dir.y != 0.0 || dir.z != 0.0;
}

}  // namespace

OccluderSet::OccluderSet(std::span<const TriMesh> meshes) {
  std::size_t total = 0;
  for (const TriMesh& m : meshes) total += m.triangles.size();
  for (std::vector<double>* a :
       {&ax_, &ay_, &az_, &bx_, &by_, &bz_, &cx_, &cy_, &cz_})
    a->reserve(total);
  meshStart_.reserve(meshes.size() + 1);
  meshStart_.push_back(0);
  for (const TriMesh& m : meshes) {
    for (const std::array<int, 3>& t : m.triangles) {
      const Vec3 a = dehomogenize(m.vertices[static_cast<std::size_t>(t[0])]);
      const Vec3 b = dehomogenize(m.vertices[static_cast<std::size_t>(t[1])]);
      const Vec3 c = dehomogenize(m.vertices[static_cast<std::size_t>(t[2])]);
      ax_.push_back(a.x), ay_.push_back(a.y), az_.push_back(a.z);
      bx_.push_back(b.x), by_.push_back(b.y), bz_.push_back(b.z);
      cx_.push_back(c.x), cy_.push_back(c.y), cz_.push_back(c.z);
    }
    meshStart_.push_back(ax_.size());
  }
}

bool OccluderSet::occluded(const Vec3& point, const Vec3& normal,
                           const HVec4& light) const {
  if (ax_.empty()) return false;
  const Vec3 origin = offset_origin(point, normal);
  Vec3 dir;
  double tMax = 0.0;
  if (!light_ray(origin, light, dir, tMax)) return false;
  const kernels::RayPlan plan = kernels::make_ray_plan(origin, dir, tMax);
  const kernels::TriSoA tris{{ax_.data(), bx_.data(), cx_.data()},
                             {ay_.data(), by_.data(), cy_.data()},
                             {az_.data(), bz_.data(), cz_.data()}};
  const kernels::KernelTable& k = kernels::active();
  const int n = static_cast<int>(ax_.size());
  for (int first = 0; first < n; first += 64) {
    const int count = std::min(64, n - first);
    if (k.ray_tri_hits(plan, tris, first, count) != 0) return true;
  }
  return false;
}

int OccluderSet::depth_count(const Vec3& point, const Vec3& normal,
                             const HVec4& light) const {
  if (ax_.empty()) return 0;
  const Vec3 origin = offset_origin(point, normal);
  Vec3 dir;
  double tMax = 0.0;
  if (!light_ray(origin, light, dir, tMax)) return 0;
  const kernels::RayPlan plan = kernels::make_ray_plan(origin, dir, tMax);
  const kernels::TriSoA tris{{ax_.data(), bx_.data(), cx_.data()},
                             {ay_.data(), by_.data(), cy_.data()},
                             {az_.data(), bz_.data(), cz_.data()}};
  const kernels::KernelTable& k = kernels::active();
  const int n = static_cast<int>(ax_.size());
  int count = 0;
  for (int first = 0; first < n; first += 64) {
    const int chunk = std::min(64, n - first);
    count += std::popcount(k.ray_tri_hits(plan, tris, first, chunk));
  }
  return count;
}

int OccluderSet::containing_count(const Vec3& point, const Vec3& normal,
                                  const HVec4& light) const {
  if (ax_.empty()) return 0;
  const Vec3 origin = offset_origin(point, normal);
  Vec3 dir;
  double tMax = 0.0;
  if (!light_ray(origin, light, dir, tMax)) return 0;
  const kernels::RayPlan plan = kernels::make_ray_plan(origin, dir, tMax);
  const kernels::TriSoA tris{{ax_.data(), bx_.data(), cx_.data()},
                             {ay_.data(), by_.data(), cy_.data()},
                             {az_.data(), bz_.data(), cz_.data()}};
  const kernels::KernelTable& k = kernels::active();
  const int n = static_cast<int>(ax_.size());
  // Hit flags for every triangle, then one containment test per mesh range.
  std::vector<std::uint64_t> bits(static_cast<std::size_t>((n + 63) / 64), 0);
  for (int first = 0; first < n; first += 64) {
    const int chunk = std::min(64, n - first);
    bits[static_cast<std::size_t>(first / 64)] =
        k.ray_tri_hits(plan, tris, first, chunk);
  }
  const auto hit = [&](std::size_t i) {
    return (bits[i / 64] >> (i % 64)) & 1u;
  };
  int count = 0;
  for (std::size_t m = 0; m + 1 < meshStart_.size(); ++m) {
    for (std::size_t i = meshStart_[m]; i < meshStart_[m + 1]; ++i) {
      if (hit(i)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

bool OccluderSet::closest_hit(const Vec3& origin, const Vec3& dir,
                              double& tHit, Vec3& outNormal) const {
  const double ad[3] = {std::fabs(dir.x), std::fabs(dir.y), std::fabs(dir.z)};
  int kz = 0;
  if (ad[1] > ad[kz]) kz = 1;
  if (ad[2] > ad[kz]) kz = 2;
  if (ad[kz] == 0.0) throw ParamError("closest_hit: zero ray direction");
  int kx = (kz + 1) % 3, ky = (kz + 2) % 3;
  const double d[3] = {dir.x, dir.y, dir.z};
  if (d[kz] < 0.0) std::swap(kx, ky);  // keep the permutation winding-preserving
  const double sz = 1.0 / d[kz];
  const double sx = d[kx] * sz;
  const double sy = d[ky] * sz;
  const double o[3] = {origin.x, origin.y, origin.z};

  bool found = false;
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = ax_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double A[3] = {ax_[i] - o[0], ay_[i] - o[1], az_[i] - o[2]};
    const double B[3] = {bx_[i] - o[0], by_[i] - o[1], bz_[i] - o[2]};
    const double C[3] = {cx_[i] - o[0], cy_[i] - o[1], cz_[i] - o[2]};
    const double Ax = A[kx] - sx * A[kz], Ay = A[ky] - sy * A[kz];
    const double Bx = B[kx] - sx * B[kz], By = B[ky] - sy * B[kz];
    const double Cx = C[kx] - sx * C[kz], Cy = C[ky] - sy * C[kz];
    const double u = Cx * By - Cy * Bx;
    const double v = Ax * Cy - Ay * Cx;
    const double w = Bx * Ay - By * Ax;
    const bool inside = (u >= 0.0 && v >= 0.0 && w >= 0.0) ||
                        (u <= 0.0 && v <= 0.0 && w <= 0.0);
    if (!inside) continue;
    const double det = u + v + w;
    if (det == 0.0) continue;
    const double t =
        (u * (sz * A[kz]) + v * (sz * B[kz]) + w * (sz * C[kz])) / det;
    if (t > 0.0 && t < best) {
      best = t;
      found = true;
      const Vec3 e1{bx_[i] - ax_[i], by_[i] - ay_[i], bz_[i] - az_[i]};
      const Vec3 e2{cx_[i] - ax_[i], cy_[i] - ay_[i], cz_[i] - az_[i]};
      outNormal = cross(e1, e2);
    }
  }
  if (found) tHit = best;
  return found;
}

ShadowState shadow_ray_test(const Vec3& point, const Vec3& normal,
                            const HVec4& light, const OccluderSet& occluders) {
  return occluders.occluded(point, normal, light) ? ShadowState::Shadowed
                                                  : ShadowState::Lit;
}

int shadow_depth_count(const Vec3& point, const Vec3& normal,
                       const HVec4& light, const OccluderSet& occluders) {
  return occluders.containing_count(point, normal, light);
}

namespace {

// Shared eye-space setup: casters and the light transformed by the view.
struct EyeSpaceShadowQuery {
  OccluderSet occ;
  HVec4 lightEye;

  EyeSpaceShadowQuery(const Scene& scene, std::size_t lightIndex,
                      const HMat4& view)
      : occ(eye_casters(scene, view)),
        lightEye(transform(view, scene.lights.at(lightIndex).position)) {}

  static std::vector<TriMesh> eye_casters(const Scene& scene,
                                          const HMat4& view) {
    std::vector<TriMesh> casters;
    for (const SceneMesh& sm : scene.meshes)
      if (sm.castsShadow) casters.push_back(transform_mesh(sm.mesh, view));
    return casters;
  }
};

}  // namespace

ShadowMask reference_mask(const Scene& scene, std::size_t lightIndex,
                          int width, int height, VisibilitySource source,
                          const VisiblePointBuffer* visible) {
  if (lightIndex >= scene.lights.size())
    throw ParamError("light index out of range");
  if (width <= 0 || height <= 0) throw ParamError("mask size must be positive");
  const HMat4 view =
      look_at(scene.camera.eye, scene.camera.lookAt, scene.camera.up);
  const EyeSpaceShadowQuery q(scene, lightIndex, view);
  const OccluderSet& occ = q.occ;
  const HVec4& lightEye = q.lightEye;

  ShadowMask mask(width, height);
  if (source == VisibilitySource::RendererPoints) {
    if (visible == nullptr)
      throw ParamError("RendererPoints needs a visible-point buffer");
    if (visible->width != width || visible->height != height)
      throw ParamError("visible-point buffer size mismatch");
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const std::size_t i = visible->index(x, y);
        if (!visible->covered[i]) continue;
        mask.set(x, y, shadow_ray_test(visible->position[i],
                                       visible->normal[i], lightEye, occ));
      }
    }
    return mask;
  }

  // Independent visibility: eye rays through pixel centers against every
  // scene mesh, in eye space (camera at the origin looking down -z).
  std::vector<TriMesh> everything;
  for (const SceneMesh& sm : scene.meshes)
    everything.push_back(transform_mesh(sm.mesh, view));
  const OccluderSet visibleSet(everything);
  const FrustumParams& fr = scene.camera.frustum;
  const double tanHalf = std::tan(fr.fovY * 0.5);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double ndcX = (2.0 * (x + 0.5)) / width - 1.0;
      const double ndcY = (2.0 * (y + 0.5)) / height - 1.0;
      const Vec3 dir{ndcX * tanHalf * fr.aspect, ndcY * tanHalf, -1.0};
      double t = 0.0;
      Vec3 n;
      if (!visibleSet.closest_hit(Vec3{0.0, 0.0, 0.0}, dir, t, n)) continue;
      const Vec3 p{dir.x * t, dir.y * t, dir.z * t};
      if (dot(n, dir) > 0.0) n = n * -1.0;  // offset toward the eye side
      mask.set(x, y, shadow_ray_test(p, n, lightEye, occ));
    }
  }
  return mask;
}

ShadowMask mask_from_stencil(std::span<const std::uint32_t> stencil,
                             const VisiblePointBuffer& visible) {
  if (stencil.size() != visible.covered.size())
    throw ParamError("stencil / visible-point buffer size mismatch");
  ShadowMask mask(visible.width, visible.height);
  for (std::size_t i = 0; i < stencil.size(); ++i) {
    if (!visible.covered[i]) continue;
    mask.values[i] =
        stencil[i] == 0 ? ShadowState::Lit : ShadowState::Shadowed;
  }
  return mask;
}

MaskDiff compare_shadow_masks(const ShadowMask& rendered,
                              const ShadowMask& reference) {
  if (rendered.width != reference.width ||
      rendered.height != reference.height)
    throw ParamError("shadow mask size mismatch");
  const int W = reference.width, H = reference.height;
  const auto isBoundary = [&](int x, int y) {
    const ShadowState c = reference.at(x, y);
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const int nx = x + dx, ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= W || ny >= H) return true;
        if (reference.at(nx, ny) != c) return true;
      }
    }
    return false;
  };
  MaskDiff diff;
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      const ShadowState a = rendered.at(x, y);
      const ShadowState b = reference.at(x, y);
      if (a == ShadowState::NoGeometry || b == ShadowState::NoGeometry)
        continue;
      ++diff.comparablePixels;
      const bool boundary = isBoundary(x, y);
      if (boundary) ++diff.boundaryPixels;
      if (a != b) {
        ++diff.mismatches;
        if (boundary) ++diff.boundaryMismatches;
      }
    }
  }
  return diff;
}

StencilCountCheck compare_stencil_counts(const Scene& scene,
                                         std::size_t lightIndex,
                                         std::span<const std::uint32_t> stencil,
                                         const VisiblePointBuffer& visible,
                                         bool wrapOps,
                                         std::uint32_t stencilMax) {
  if (lightIndex >= scene.lights.size())
    throw ParamError("light index out of range");
  if (stencil.size() != visible.covered.size())
    throw ParamError("stencil / visible-point buffer size mismatch");
  const HMat4 view =
      look_at(scene.camera.eye, scene.camera.lookAt, scene.camera.up);
  const EyeSpaceShadowQuery q(scene, lightIndex, view);

  const int W = visible.width, H = visible.height;
  StencilCountCheck check;
  std::vector<long> expected(static_cast<std::size_t>(W) * H, -1);
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      const std::size_t i = visible.index(x, y);
      if (!visible.covered[i]) continue;
      const int crossings = q.occ.depth_count(visible.position[i],
                                              visible.normal[i], q.lightEye);
      if (crossings % 2 != 0) {
        ++check.oddCountPixels;
        continue;
      }
      expected[i] = crossings / 2;
      check.maxExpectedCount =
          std::max(check.maxExpectedCount, crossings / 2);
    }
  }
  const auto isBoundary = [&](int x, int y) {
    const long c = expected[visible.index(x, y)];
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const int nx = x + dx, ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= W || ny >= H) return true;
        if (expected[visible.index(nx, ny)] != c) return true;
      }
    }
    return false;
  };
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      const std::size_t i = visible.index(x, y);
      if (expected[i] < 0) continue;
      ++check.comparablePixels;
      const bool boundary = isBoundary(x, y);
      if (boundary) ++check.boundaryPixels;
      const std::uint32_t want =
          wrapOps ? static_cast<std::uint32_t>(expected[i]) &
                        stencilMax  // counts wrap modulo 2^bits
                  : static_cast<std::uint32_t>(expected[i]);
      if (stencil[i] != want) {
        ++check.mismatches;
        if (boundary) ++check.boundaryMismatches;
      }
    }
  }
  return check;
}

void write_mask_pgm_file(const ShadowMask& mask, const std::string& path) {
  std::vector<std::uint8_t> pixels;
  pixels.reserve(static_cast<std::size_t>(mask.width) * mask.height);
  for (int y = mask.height - 1; y >= 0; --y) {
    for (int x = 0; x < mask.width; ++x) {
      const ShadowState s = mask.at(x, y);
      pixels.push_back(s == ShadowState::Lit        ? std::uint8_t{255}
                       : s == ShadowState::Shadowed ? std::uint8_t{0}
                                                    : std::uint8_t{128});
    }
  }
  write_pgm_file(mask.width, mask.height, pixels, path);
}

}  // namespace sv
