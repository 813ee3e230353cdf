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
#include "sv/primitives.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>

#include "sv/error.hpp"

namespace sv {

TriMesh unit_tetrahedron() {
  TriMesh m;
  m.vertices = {{0.5, 0.5, 0.5, 1.0},
                {0.5, -0.5, -0.5, 1.0},
                {-0.5, 0.5, -0.5, 1.0},
                {-0.5, -0.5, 0.5, 1.0}};
  m.triangles = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
  return m;
}

TriMesh unit_cube() {
  TriMesh m;
  for (int i = 0; i < 8; ++i)
    m.vertices.push_back({(i & 1) ? 0.5 : -0.5,
                          (i & 2) ? 0.5 : -0.5,
                          (i & 4) ? 0.5 : -0.5, 1.0});
  // Vertex bit layout: x = bit0, y = bit1, z = bit2.
  const int v0 = 0, v1 = 1, v2 = 3, v3 = 2, v4 = 4, v5 = 5, v6 = 7, v7 = 6;
  m.triangles = {
      {v0, v3, v2}, {v0, v2, v1},  // -z
      {v4, v5, v6}, {v4, v6, v7},  // +z
      {v0, v4, v7}, {v0, v7, v3},  // -x
      {v1, v2, v6}, {v1, v6, v5},  // +x
      {v0, v1, v5}, {v0, v5, v4},  // -y
      {v3, v7, v6}, {v3, v6, v2},  // +y
  };
  return m;
}

TriMesh unit_plane() {
  TriMesh m;
  m.vertices = {{-0.5, 0.0, -0.5, 1.0},
                {-0.5, 0.0, 0.5, 1.0},
                {0.5, 0.0, 0.5, 1.0},
                {0.5, 0.0, -0.5, 1.0}};
  m.triangles = {{0, 1, 2}, {0, 2, 3}};
  return m;
}

namespace {

int midpoint(TriMesh& m, std::map<std::pair<int, int>, int>& cache, int a,
             int b) {
  const auto key = std::minmax(a, b);
  const auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const HVec4& va = m.vertices[static_cast<size_t>(a)];
  const HVec4& vb = m.vertices[static_cast<size_t>(b)];
  m.vertices.push_back({0.5 * (va.x + vb.x), 0.5 * (va.y + vb.y),
                        0.5 * (va.z + vb.z), 1.0});
  const int idx = static_cast<int>(m.vertices.size()) - 1;
  cache.emplace(key, idx);
  return idx;
}

}  // namespace

TriMesh icosphere(int subdivisions) {
  if (subdivisions < 0 || subdivisions > 6)
    throw ParamError("icosphere: subdivisions must lie in [0, 6]");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  TriMesh m;
  const double raw[12][3] = {{-1, t, 0},  {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                             {0, -1, t},  {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                             {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (const auto& v : raw) m.vertices.push_back({v[0], v[1], v[2], 1.0});
  m.triangles = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                 {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                 {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                 {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> cache;
    std::vector<std::array<int, 3>> next;
    next.reserve(m.triangles.size() * 4);
    for (const auto& tri : m.triangles) {
      const int ab = midpoint(m, cache, tri[0], tri[1]);
      const int bc = midpoint(m, cache, tri[1], tri[2]);
      const int ca = midpoint(m, cache, tri[2], tri[0]);
      next.push_back({tri[0], ab, ca});
      next.push_back({tri[1], bc, ab});
      next.push_back({tri[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    m.triangles = std::move(next);
  }

  for (auto& v : m.vertices) {
    const double len = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
    const double s = 0.5 / len;
    v.x *= s;
    v.y *= s;
    v.z *= s;
  }
  return m;
}

TriMesh open_box(double hx, double hy, double hz, double t) {
  if (!(hx > 0.0 && hy > 0.0 && hz > 0.0))
    throw ParamError("open_box: half extents must be positive");
  if (!(t > 0.0 && t < hx && t < hz && t < 2.0 * hy))
    throw ParamError("open_box: wall thickness out of range");
  const double ix = hx - t, iz = hz - t, ib = -hy + t;
  TriMesh m;
  for (int i = 0; i < 8; ++i)
    m.vertices.push_back({(i & 1) ? hx : -hx, (i & 2) ? hy : -hy,
                          (i & 4) ? hz : -hz, 1.0});
  for (int i = 0; i < 8; ++i)
    m.vertices.push_back({(i & 1) ? ix : -ix, (i & 2) ? hy : ib,
                          (i & 4) ? iz : -iz, 1.0});
  const int o0 = 0, o1 = 1, o2 = 3, o3 = 2, o4 = 4, o5 = 5, o6 = 7, o7 = 6;
  const int i0 = 8, i1 = 9, i2 = 11, i3 = 10, i4 = 12, i5 = 13, i6 = 15,
            i7 = 14;
  m.triangles = {
      // outer shell minus the top
      {o0, o1, o5}, {o0, o5, o4},  // bottom
      {o0, o3, o2}, {o0, o2, o1},  // -z
      {o4, o5, o6}, {o4, o6, o7},  // +z
      {o0, o4, o7}, {o0, o7, o3},  // -x
      {o1, o2, o6}, {o1, o6, o5},  // +x
      // cavity surfaces, facing into the cavity
      {i0, i4, i5}, {i0, i5, i1},  // cavity floor (+y)
      {i0, i3, i7}, {i0, i7, i4},  // wall at x = -ix (+x)
      {i1, i5, i6}, {i1, i6, i2},  // wall at x = +ix (-x)
      {i0, i1, i2}, {i0, i2, i3},  // wall at z = -iz (+z)
      {i4, i7, i6}, {i4, i6, i5},  // wall at z = +iz (-z)
      // rim annulus at y = +hy (+y)
      {o3, o7, i7}, {o3, i7, i3},
      {o7, o6, i6}, {o7, i6, i7},
      {o6, o2, i2}, {o6, i2, i6},
      {o2, o3, i3}, {o2, i3, i2},
  };
  return m;
}

double mesh_signed_volume(const TriMesh& mesh) {
  double vol = 0.0;
  for (const auto& tri : mesh.triangles) {
    Vec3 p[3];
    for (int j = 0; j < 3; ++j) {
      const HVec4& v = mesh.vertices[static_cast<size_t>(tri[static_cast<size_t>(j)])];
      if (!(v.w > 0.0))
        throw ParamError("mesh_signed_volume: requires affine vertices");
      p[j] = {v.x / v.w, v.y / v.w, v.z / v.w};
    }
    vol += dot(p[0], cross(p[1], p[2])) / 6.0;
  }
  return vol;
}

}  // namespace sv
