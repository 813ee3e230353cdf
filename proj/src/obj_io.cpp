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
#include "sv/obj_io.hpp"

#include <fstream>
#include <sstream>

#include "sv/error.hpp"

namespace sv {

namespace {

[[noreturn]] void fail(const std::string& label, int line,
                       const std::string& msg) {
  throw IoError(label + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

TriMesh load_obj(std::istream& in, const std::string& label) {
  TriMesh mesh;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;  // blank
    if (tag[0] == '#') continue;
    if (tag == "v") {
      double x, y, z, w = 1.0;
      if (!(ls >> x >> y >> z)) fail(label, lineNo, "vertex needs 3 numbers");
      ls >> w;  // optional homogeneous coordinate
      std::string extra;
      if (ls >> extra) fail(label, lineNo, "trailing tokens after vertex");
      mesh.vertices.push_back({x, y, z, w});
    } else if (tag == "f") {
      long i, j, k;
      if (!(ls >> i >> j >> k)) fail(label, lineNo, "face needs 3 indices");
      std::string extra;
      if (ls >> extra) fail(label, lineNo, "only triangular faces supported");
      const long n = static_cast<long>(mesh.vertices.size());
      for (long idx : {i, j, k})
        if (idx < 1 || idx > n)
          fail(label, lineNo, "face index " + std::to_string(idx) +
                                  " out of range [1, " + std::to_string(n) +
                                  "]");
      mesh.triangles.push_back({static_cast<int>(i - 1),
                                static_cast<int>(j - 1),
                                static_cast<int>(k - 1)});
    } else {
      fail(label, lineNo, "unsupported directive '" + tag + "'");
    }
  }
  return mesh;
}

TriMesh load_obj_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return load_obj(in, path);
}

void save_obj(const TriMesh& mesh, std::ostream& out) {
  out.precision(17);
  for (const auto& v : mesh.vertices) {
    out << "v " << v.x << ' ' << v.y << ' ' << v.z;
    if (v.w != 1.0) out << ' ' << v.w;
    out << '\n';
  }
  for (const auto& t : mesh.triangles)
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

}  // namespace sv
