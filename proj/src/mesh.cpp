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
#include "sv/mesh.hpp"

#include <cstdint>
#include <unordered_map>

#include "sv/error.hpp"

namespace sv {

namespace {

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

std::string edge_name(int a, int b) {
  return "(" + std::to_string(a) + " -> " + std::to_string(b) + ")";
}

void check_indices(const TriMesh& mesh) {
  const int n = static_cast<int>(mesh.vertices.size());
  for (size_t t = 0; t < mesh.triangles.size(); ++t)
    for (int j = 0; j < 3; ++j) {
      const int v = mesh.triangles[t][static_cast<size_t>(j)];
      if (v < 0 || v >= n)
        throw ParamError("mesh: triangle " + std::to_string(t) +
                         " references vertex " + std::to_string(v) +
                         " out of range");
    }
}

}  // namespace

Adjacency build_adjacency(const TriMesh& mesh) {
  check_indices(mesh);
  std::unordered_map<std::uint64_t, int> owner;  // directed edge -> triangle
  owner.reserve(mesh.triangles.size() * 3);
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int j = 0; j < 3; ++j) {
      const int a = tri[static_cast<size_t>(j)];
      const int b = tri[static_cast<size_t>((j + 1) % 3)];
      if (a == b)
        throw NonManifoldError("mesh: triangle " + std::to_string(t) +
                               " repeats vertex " + std::to_string(a));
      if (!owner.emplace(edge_key(a, b), static_cast<int>(t)).second)
        throw NonManifoldError("mesh: directed edge " + edge_name(a, b) +
                               " used by two triangles (inconsistent winding "
                               "or non-manifold)");
    }
  }

  Adjacency adj;
  adj.neighbor.assign(mesh.triangles.size(), {-1, -1, -1});
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int j = 0; j < 3; ++j) {
      const int a = tri[static_cast<size_t>(j)];
      const int b = tri[static_cast<size_t>((j + 1) % 3)];
      const auto it = owner.find(edge_key(b, a));
      if (it == owner.end())
        throw NonManifoldError("mesh: edge " + edge_name(a, b) +
                               " has no opposing triangle (mesh not closed)");
      adj.neighbor[t][static_cast<size_t>(j)] = it->second;
    }
  }
  return adj;
}

ValidationReport validate_mesh(const TriMesh& mesh) {
  ValidationReport rep;
  const int n = static_cast<int>(mesh.vertices.size());

  for (size_t v = 0; v < mesh.vertices.size(); ++v)
    if (mesh.vertices[v].w < 0.0) {
      rep.wNonNegative = false;
      rep.issues.push_back("vertex " + std::to_string(v) + " has w < 0");
    }

  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    bool bad = false;
    for (int j = 0; j < 3; ++j) {
      const int v = tri[static_cast<size_t>(j)];
      if (v < 0 || v >= n) bad = true;
    }
    if (bad) {
      rep.nonDegenerate = false;
      rep.issues.push_back("triangle " + std::to_string(t) +
                           " has out-of-range vertex index");
      continue;
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[2] == tri[0]) {
      rep.nonDegenerate = false;
      rep.issues.push_back("triangle " + std::to_string(t) +
                           " repeats a vertex");
      continue;
    }
    try {
      plane_from_triangle(mesh.vertices[static_cast<size_t>(tri[0])],
                          mesh.vertices[static_cast<size_t>(tri[1])],
                          mesh.vertices[static_cast<size_t>(tri[2])]);
    } catch (const DegeneracyError&) {
      rep.nonDegenerate = false;
      rep.issues.push_back("triangle " + std::to_string(t) +
                           " is geometrically degenerate");
    }
  }

  // Undirected edge usage: a closed consistently wound 2-manifold uses every
  // undirected edge exactly twice, once per direction.
  std::unordered_map<std::uint64_t, std::array<int, 2>> uses;  // {fwd, rev}
  for (const auto& tri : mesh.triangles) {
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[2] == tri[0]) continue;
    for (int j = 0; j < 3; ++j) {
      const int a = tri[static_cast<size_t>(j)];
      const int b = tri[static_cast<size_t>((j + 1) % 3)];
      if (a < 0 || a >= n || b < 0 || b >= n) continue;
      const bool fwd = a < b;
      auto& u = uses[fwd ? edge_key(a, b) : edge_key(b, a)];
      ++u[fwd ? 0 : 1];
    }
  }
  for (const auto& [key, u] : uses) {
    const int a = static_cast<int>(key >> 32);
    const int b = static_cast<int>(key & 0xffffffffu);
    const int total = u[0] + u[1];
    if (total != 2) {
      rep.closed = false;
      rep.issues.push_back("edge " + edge_name(a, b) + " used " +
                           std::to_string(total) + " times (expected 2)");
    } else if (u[0] != 1) {
      rep.windingConsistent = false;
      rep.issues.push_back("edge " + edge_name(a, b) +
                           " traversed twice in the same direction");
    }
  }
  return rep;
}

std::vector<Plane> triangle_planes(const TriMesh& mesh) {
  check_indices(mesh);
  std::vector<Plane> planes;
  planes.reserve(mesh.triangles.size());
  for (const auto& tri : mesh.triangles)
    planes.push_back(plane_from_triangle(
        mesh.vertices[static_cast<size_t>(tri[0])],
        mesh.vertices[static_cast<size_t>(tri[1])],
        mesh.vertices[static_cast<size_t>(tri[2])]));
  return planes;
}

FacingSet classify_facing(const TriMesh& mesh, std::span<const Plane> planes,
                          const HVec4& light) {
  if (planes.size() != mesh.triangles.size())
    throw ParamError("classify_facing: plane count does not match mesh");
  FacingSet f;
  f.backFacing.resize(mesh.triangles.size());
  for (size_t t = 0; t < planes.size(); ++t) {
    const double d = planes[t].a * light.x + planes[t].b * light.y +
                     planes[t].c * light.z + planes[t].d * light.w;
    f.backFacing[t] = d < 0.0 ? 1 : 0;
  }
  return f;
}

std::vector<SilhouetteEdge> extract_silhouette_edges(const TriMesh& mesh,
                                                     const Adjacency& adj,
                                                     const FacingSet& facing) {
  if (adj.neighbor.size() != mesh.triangles.size() ||
      facing.backFacing.size() != mesh.triangles.size())
    throw ParamError("extract_silhouette_edges: mismatched inputs");
  std::vector<SilhouetteEdge> edges;
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    if (facing.back(static_cast<int>(t))) continue;
    const auto& tri = mesh.triangles[t];
    for (int j = 0; j < 3; ++j) {
      const int nb = adj.neighbor[t][static_cast<size_t>(j)];
      if (!facing.back(nb)) continue;
      SilhouetteEdge e;
      e.from = tri[static_cast<size_t>(j)];
      e.to = tri[static_cast<size_t>((j + 1) % 3)];
      e.a = mesh.vertices[static_cast<size_t>(e.from)];
      e.b = mesh.vertices[static_cast<size_t>(e.to)];
      edges.push_back(e);
    }
  }
  return edges;
}

std::vector<std::vector<SilhouetteEdge>> stitch_loops(
    std::span<const SilhouetteEdge> edges) {
  std::unordered_map<int, std::vector<size_t>> byStart;
  for (size_t i = 0; i < edges.size(); ++i)
    byStart[edges[i].from].push_back(i);

  std::vector<bool> used(edges.size(), false);
  std::vector<std::vector<SilhouetteEdge>> loops;
  for (size_t start = 0; start < edges.size(); ++start) {
    if (used[start]) continue;
    std::vector<SilhouetteEdge> loop;
    size_t cur = start;
    while (true) {
      used[cur] = true;
      loop.push_back(edges[cur]);
      if (edges[cur].to == edges[start].from) break;
      const auto it = byStart.find(edges[cur].to);
      size_t next = edges.size();
      if (it != byStart.end())
        for (size_t cand : it->second)
          if (!used[cand]) {
            next = cand;
            break;
          }
      if (next == edges.size())
        throw TopologyError("stitch_loops: open chain at vertex " +
                            std::to_string(edges[cur].to));
      cur = next;
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

TriMesh transform_mesh(const TriMesh& mesh, const HMat4& m) {
  TriMesh out;
  out.vertices.reserve(mesh.vertices.size());
  for (const auto& v : mesh.vertices) out.vertices.push_back(transform(m, v));
  out.triangles = mesh.triangles;
  return out;
}

}  // namespace sv
