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

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "sv/error.hpp"
#include "sv/mesh.hpp"
#include "sv/obj_io.hpp"
#include "sv/primitives.hpp"

using namespace sv;

TEST_CASE("primitive shapes have the expected size and are closed") {
  const TriMesh tet = unit_tetrahedron();
  CHECK(tet.vertices.size() == 4);
  CHECK(tet.triangles.size() == 4);
  CHECK(validate_mesh(tet).ok());
  CHECK(mesh_signed_volume(tet) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

  const TriMesh cube = unit_cube();
  CHECK(cube.triangles.size() == 12);
  CHECK(validate_mesh(cube).ok());
  CHECK(mesh_signed_volume(cube) == doctest::Approx(1.0).epsilon(1e-13));

  const TriMesh box = open_box(1.0, 0.8, 1.0, 0.2);
  CHECK(box.triangles.size() == 28);
  CHECK(validate_mesh(box).ok());
  // Outer shell minus cavity: 6.4 - 3.584.
  CHECK(mesh_signed_volume(box) == doctest::Approx(2.816).epsilon(1e-12));

  const TriMesh plane = unit_plane();
  CHECK(plane.triangles.size() == 2);
  CHECK_FALSE(validate_mesh(plane).closed);
}

TEST_CASE("icosphere refines toward the analytic sphere") {
  CHECK(icosphere(0).triangles.size() == 20);
  CHECK(icosphere(1).triangles.size() == 80);
  CHECK(icosphere(2).triangles.size() == 320);
  for (int s = 0; s <= 3; ++s) {
    const TriMesh m = icosphere(s);
    CHECK(validate_mesh(m).ok());
    for (const HVec4& v : m.vertices)
      CHECK(length(v.xyz()) == doctest::Approx(0.5).epsilon(1e-12));
  }
  // Volume of the subdivision-3 sphere is within 2% of (4/3)*pi*r^3.
  CHECK(mesh_signed_volume(icosphere(3)) ==
        doctest::Approx(0.5235987755982988).epsilon(0.02));
  CHECK_THROWS_AS(icosphere(-1), ParamError);
  CHECK_THROWS_AS(icosphere(7), ParamError);
}

TEST_CASE("open_box rejects out-of-range wall thickness") {
  CHECK_THROWS_AS(open_box(1.0, 1.0, 1.0, 0.0), ParamError);
  CHECK_THROWS_AS(open_box(1.0, 1.0, 1.0, 1.0), ParamError);
  CHECK_THROWS_AS(open_box(-1.0, 1.0, 1.0, 0.1), ParamError);
}

TEST_CASE("adjacency pairs every directed edge") {
  const TriMesh cube = unit_cube();
  const Adjacency adj = build_adjacency(cube);
  REQUIRE(adj.neighbor.size() == cube.triangles.size());
  for (size_t t = 0; t < cube.triangles.size(); ++t)
    for (int j = 0; j < 3; ++j) {
      const int n = adj.neighbor[t][static_cast<size_t>(j)];
      CHECK(n >= 0);
      CHECK(n != static_cast<int>(t));
      // The neighbor holds the opposite directed edge.
      const int a = cube.triangles[t][static_cast<size_t>(j)];
      const int b = cube.triangles[t][static_cast<size_t>((j + 1) % 3)];
      bool foundOpposite = false;
      for (int k = 0; k < 3; ++k) {
        const auto& nt = cube.triangles[static_cast<size_t>(n)];
        if (nt[static_cast<size_t>(k)] == b &&
            nt[static_cast<size_t>((k + 1) % 3)] == a)
          foundOpposite = true;
      }
      CHECK(foundOpposite);
    }
}

TEST_CASE("open meshes and flipped windings are rejected") {
  TriMesh open = unit_cube();
  open.triangles.pop_back();
  CHECK_THROWS_AS(build_adjacency(open), NonManifoldError);
  const ValidationReport openReport = validate_mesh(open);
  CHECK_FALSE(openReport.ok());
  CHECK_FALSE(openReport.closed);

  TriMesh flipped = unit_cube();
  std::swap(flipped.triangles[0][0], flipped.triangles[0][1]);
  CHECK_FALSE(validate_mesh(flipped).ok());

  TriMesh degenerate = unit_tetrahedron();
  degenerate.triangles[0] = {0, 0, 1};
  CHECK_FALSE(validate_mesh(degenerate).ok());
}

TEST_CASE("facing classification against a positional light") {
  const TriMesh cube = unit_cube();
  const auto planes = triangle_planes(cube);
  const FacingSet facing = classify_facing(cube, planes, {10.0, 0.0, 0.0, 1.0});
  int front = 0;
  for (size_t t = 0; t < cube.triangles.size(); ++t)
    if (facing.front(static_cast<int>(t))) ++front;
  // Only the two +x triangles face a light far down the +x axis.
  CHECK(front == 2);
}

TEST_CASE("facing classification for a directional light") {
  const TriMesh cube = unit_cube();
  const auto planes = triangle_planes(cube);
  // Generic direction with positive x, y and z components: the +x, +y and
  // +z faces (two triangles each) face the light, the rest face away.
  const FacingSet facing = classify_facing(cube, planes, {0.3, 1.0, 0.2, 0.0});
  int front = 0;
  for (size_t t = 0; t < cube.triangles.size(); ++t)
    if (facing.front(static_cast<int>(t))) ++front;
  CHECK(front == 6);
}

TEST_CASE("silhouette of a cube lit along +x is one 4-edge loop") {
  const TriMesh cube = unit_cube();
  const Adjacency adj = build_adjacency(cube);
  const auto planes = triangle_planes(cube);
  const FacingSet facing = classify_facing(cube, planes, {10.0, 0.0, 0.0, 1.0});
  const auto edges = extract_silhouette_edges(cube, adj, facing);
  CHECK(edges.size() == 4);
  const auto loops = stitch_loops(edges);
  REQUIRE(loops.size() == 1);
  CHECK(loops[0].size() == 4);
  // The loop is a closed chain: each edge ends where the next begins.
  for (size_t i = 0; i < loops[0].size(); ++i)
    CHECK(loops[0][i].to == loops[0][(i + 1) % loops[0].size()].from);
}

TEST_CASE("silhouette edges lie between exactly one front and one back face") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (const TriMesh& mesh :
       {unit_cube(), unit_tetrahedron(), icosphere(1), open_box(1, 0.8, 1, 0.2)}) {
    const Adjacency adj = build_adjacency(mesh);
    const auto planes = triangle_planes(mesh);
    for (int trial = 0; trial < 10; ++trial) {
      const HVec4 light{u(rng), u(rng) + 4.5, u(rng), 1.0};
      const FacingSet facing = classify_facing(mesh, planes, light);
      const auto edges = extract_silhouette_edges(mesh, adj, facing);

      // Brute-force count: edges whose two adjacent triangles disagree.
      size_t expected = 0;
      for (size_t t = 0; t < mesh.triangles.size(); ++t)
        for (int j = 0; j < 3; ++j) {
          const int n = adj.neighbor[t][static_cast<size_t>(j)];
          if (facing.front(static_cast<int>(t)) && facing.back(n)) ++expected;
        }
      CHECK(edges.size() == expected);

      // Every loop closes on itself.
      for (const auto& loop : stitch_loops(edges)) {
        REQUIRE(loop.size() >= 3);
        for (size_t i = 0; i < loop.size(); ++i)
          CHECK(loop[i].to == loop[(i + 1) % loop.size()].from);
      }
    }
  }
}

TEST_CASE("transform_mesh applies the matrix to every vertex") {
  const TriMesh cube = unit_cube();
  const HMat4 m = mat_translate({1.0, 2.0, 3.0}) * mat_scale({2.0, 2.0, 2.0});
  const TriMesh moved = transform_mesh(cube, m);
  REQUIRE(moved.vertices.size() == cube.vertices.size());
  CHECK(moved.triangles == cube.triangles);
  for (size_t i = 0; i < cube.vertices.size(); ++i) {
    const HVec4 expect = transform(m, cube.vertices[i]);
    CHECK(moved.vertices[i].x == expect.x);
    CHECK(moved.vertices[i].y == expect.y);
    CHECK(moved.vertices[i].z == expect.z);
    CHECK(moved.vertices[i].w == expect.w);
  }
  // Rigid+uniform scale preserves closedness and scales volume by det.
  CHECK(validate_mesh(moved).ok());
  CHECK(mesh_signed_volume(moved) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("obj round trip") {
  const TriMesh cube = unit_cube();
  std::ostringstream out;
  save_obj(cube, out);
  std::istringstream in(out.str());
  const TriMesh back = load_obj(in, "roundtrip");
  REQUIRE(back.vertices.size() == cube.vertices.size());
  REQUIRE(back.triangles.size() == cube.triangles.size());
  CHECK(back.triangles == cube.triangles);
  for (size_t i = 0; i < cube.vertices.size(); ++i) {
    CHECK(back.vertices[i].x == doctest::Approx(cube.vertices[i].x));
    CHECK(back.vertices[i].y == doctest::Approx(cube.vertices[i].y));
    CHECK(back.vertices[i].z == doctest::Approx(cube.vertices[i].z));
  }
  CHECK(validate_mesh(back).ok());
}

TEST_CASE("obj parsing handles comments and rejects junk") {
  std::istringstream good(
      "# tetra\n"
      "v 0 0 0\n"
      "v 1 0 0\n"
      "v 0 1 0\n"
      "v 0 0 1\n"
      "\n"
      "f 1 2 3\n"
      "f 1 4 2\n"
      "f 2 4 3\n"
      "f 1 3 4\n");
  const TriMesh m = load_obj(good, "inline");
  CHECK(m.vertices.size() == 4);
  CHECK(m.triangles.size() == 4);

  std::istringstream badIndex("v 0 0 0\nf 1 2 3\n");
  CHECK_THROWS_AS(load_obj(badIndex, "bad"), IoError);
  std::istringstream badToken("v 0 0 zero\n");
  CHECK_THROWS_AS(load_obj(badToken, "bad"), IoError);
  CHECK_THROWS_AS(load_obj_file("/nonexistent/path.obj"), IoError);
}
