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
#include "sv/volume.hpp"

#include <cstring>
#include <map>
#include <ostream>
#include <string>

#include "sv/error.hpp"

namespace sv {

HVec4 project_to_infinity(const HVec4& v, const HVec4& light) {
  HVec4 out{v.x * light.w - light.x * v.w, v.y * light.w - light.y * v.w,
            v.z * light.w - light.z * v.w, 0.0};
  if (out.x == 0.0 && out.y == 0.0 && out.z == 0.0)
    throw DegeneracyError("project_to_infinity: zero direction for vertex (" +
                          std::to_string(v.x) + ", " + std::to_string(v.y) +
                          ", " + std::to_string(v.z) + ", " +
                          std::to_string(v.w) + ") (light on surface)");
  return out;
}

VolumeQuad extrude_quad(const HVec4& a, const HVec4& b, const HVec4& light) {
  return {{b, a, project_to_infinity(a, light), project_to_infinity(b, light)}};
}

std::size_t ShadowVolumeGeometry::side_vertices_submitted() const {
  std::size_t n = 0;
  for (const auto& loop : sideLoops) switch (encoding) {
      case VolumeEncoding::Independent:
        n += 4 * loop.quads.size();
        break;
      case VolumeEncoding::LoopStrips:
        n += loop.stripVertices.size();
        break;
      case VolumeEncoding::DirectionalFans:
        n += loop.fanVertices.size();
        break;
    }
  return n;
}

std::size_t ShadowVolumeGeometry::cap_vertices_submitted() const {
  return 3 * (backCap.size() + frontCap.size());
}

ShadowVolumeGeometry build_shadow_volume(const TriMesh& mesh,
                                         const Adjacency& adj,
                                         const FacingSet& facing,
                                         const HVec4& light,
                                         const VolumeOptions& opts) {
  const bool directional = light.w == 0.0;
  if (opts.encoding == VolumeEncoding::DirectionalFans && !directional)
    throw ParamError(
        "build_shadow_volume: DirectionalFans requires a directional light");
  if (opts.dropDirectionalBackCap && !directional)
    throw ParamError(
        "build_shadow_volume: dropDirectionalBackCap requires a directional "
        "light");

  ShadowVolumeGeometry g;
  g.encoding = opts.encoding;

  const auto edges = extract_silhouette_edges(mesh, adj, facing);
  for (auto& loopEdges : stitch_loops(edges)) {
    SideLoop loop;
    loop.quads.reserve(loopEdges.size());
    for (const auto& e : loopEdges)
      loop.quads.push_back(extrude_quad(e.a, e.b, light));

    if (opts.encoding == VolumeEncoding::LoopStrips) {
      // A_0, A_0^inf, A_1, A_1^inf, ..., A_n(=A_0), A_n^inf.
      loop.stripVertices.reserve(2 * loopEdges.size() + 2);
      for (const auto& e : loopEdges) {
        loop.stripVertices.push_back(e.a);
        loop.stripVertices.push_back(project_to_infinity(e.a, light));
      }
      loop.stripVertices.push_back(loopEdges.front().a);
      loop.stripVertices.push_back(
          project_to_infinity(loopEdges.front().a, light));
    } else if (opts.encoding == VolumeEncoding::DirectionalFans) {
      // Every vertex extrudes to the same point at infinity opposite the
      // light; the rim is the loop traversed in reverse so each fan triangle
      // keeps the winding of the quad expansion.
      loop.fanVertices.reserve(loopEdges.size() + 2);
      loop.fanVertices.push_back({-light.x, -light.y, -light.z, 0.0});
      loop.fanVertices.push_back(loopEdges.front().a);
      for (size_t k = loopEdges.size(); k-- > 1;)
        loop.fanVertices.push_back(loopEdges[k].a);
      loop.fanVertices.push_back(loopEdges.front().a);
    }
    g.sideLoops.push_back(std::move(loop));
  }

  const bool emitBackCap = !(directional && opts.dropDirectionalBackCap);
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    const HVec4& a = mesh.vertices[static_cast<size_t>(tri[0])];
    const HVec4& b = mesh.vertices[static_cast<size_t>(tri[1])];
    const HVec4& c = mesh.vertices[static_cast<size_t>(tri[2])];
    if (facing.back(static_cast<int>(t))) {
      if (emitBackCap)
        g.backCap.push_back({{project_to_infinity(a, light),
                              project_to_infinity(b, light),
                              project_to_infinity(c, light)}});
    } else {
      g.frontCap.push_back({{a, b, c}});
    }
  }
  return g;
}

std::vector<VolumeTri> side_triangles(const SideLoop& loop,
                                      VolumeEncoding encoding) {
  std::vector<VolumeTri> tris;
  if (encoding == VolumeEncoding::DirectionalFans) {
    const auto& fan = loop.fanVertices;
    if (fan.size() < 3) throw ParamError("side_triangles: fan too short");
    tris.reserve(fan.size() - 2);
    // Rotate each fan triangle so the apex comes last: the decoded triangle
    // then has the same vertex order as the quad expansion's non-degenerate
    // half, which keeps rasterized coverage and interpolated depth
    // bit-identical across encodings.
    for (size_t k = 1; k + 1 < fan.size(); ++k)
      tris.push_back({{fan[k], fan[k + 1], fan[0]}});
    return tris;
  }

  std::vector<VolumeQuad> quads;
  const std::vector<VolumeQuad>* src = &loop.quads;
  if (encoding == VolumeEncoding::LoopStrips) {
    const auto& s = loop.stripVertices;
    if (s.size() < 4 || s.size() % 2 != 0)
      throw ParamError("side_triangles: malformed strip");
    quads.reserve(s.size() / 2 - 1);
    for (size_t k = 0; k + 3 < s.size(); k += 2)
      quads.push_back({{s[k + 2], s[k], s[k + 1], s[k + 3]}});
    src = &quads;
  }
  tris.reserve(src->size() * 2);
  for (const auto& q : *src) {
    tris.push_back({{q.v[0], q.v[1], q.v[2]}});
    tris.push_back({{q.v[0], q.v[2], q.v[3]}});
  }
  return tris;
}

std::vector<VolumeTri> volume_triangles(const ShadowVolumeGeometry& g) {
  std::vector<VolumeTri> tris;
  for (const auto& loop : g.sideLoops) {
    auto side = side_triangles(loop, g.encoding);
    tris.insert(tris.end(), side.begin(), side.end());
  }
  tris.insert(tris.end(), g.backCap.begin(), g.backCap.end());
  tris.insert(tris.end(), g.frontCap.begin(), g.frontCap.end());
  return tris;
}

namespace {

struct VertKey {
  std::array<std::uint64_t, 4> bits;
  bool operator<(const VertKey& o) const { return bits < o.bits; }
};

VertKey key_of(const HVec4& v) {
  VertKey k;
  static_assert(sizeof(double) == sizeof(std::uint64_t));
  std::memcpy(&k.bits[0], &v.x, sizeof(double));
  std::memcpy(&k.bits[1], &v.y, sizeof(double));
  std::memcpy(&k.bits[2], &v.z, sizeof(double));
  std::memcpy(&k.bits[3], &v.w, sizeof(double));
  return k;
}

}  // namespace

bool check_closed(const ShadowVolumeGeometry& g) {
  // Count directed edges keyed by the exact bit patterns of their endpoints;
  // closed means count(a -> b) == count(b -> a) for every edge.
  std::map<std::pair<VertKey, VertKey>, long> count;
  for (const auto& tri : volume_triangles(g))
    for (int j = 0; j < 3; ++j) {
      const HVec4& a = tri.v[static_cast<size_t>(j)];
      const HVec4& b = tri.v[static_cast<size_t>((j + 1) % 3)];
      ++count[{key_of(a), key_of(b)}];
    }
  for (const auto& [edge, n] : count) {
    const auto rev = count.find({edge.second, edge.first});
    if (rev == count.end() || rev->second != n) return false;
  }
  return true;
}

void export_obj(const ShadowVolumeGeometry& g, std::ostream& out) {
  std::map<VertKey, int> index;
  TriMesh dump;
  auto idx = [&](const HVec4& v) {
    const auto [it, inserted] =
        index.emplace(key_of(v), static_cast<int>(dump.vertices.size()));
    if (inserted) dump.vertices.push_back(v);
    return it->second;
  };
  for (const auto& tri : volume_triangles(g))
    dump.triangles.push_back({idx(tri.v[0]), idx(tri.v[1]), idx(tri.v[2])});

  out.precision(17);
  for (const auto& v : dump.vertices) {
    out << "v " << v.x << ' ' << v.y << ' ' << v.z;
    if (v.w != 1.0) out << ' ' << v.w;
    out << '\n';
  }
  for (const auto& t : dump.triangles)
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

}  // namespace sv
