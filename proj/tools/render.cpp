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

// Command-line renderer. Exit codes: 0 success, 1 parameter / scene error,
// 2 verification failure. The run report (deterministic JSON) goes to
// standard output; timings go to standard error so the report stays
// byte-reproducible.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sv/error.hpp"
#include "sv/image_io.hpp"
#include "sv/kernels.hpp"
#include "sv/pipeline.hpp"
#include "sv/report.hpp"
#include "sv/scene_json.hpp"

namespace {

void parse_resolution(const std::string& s, int& w, int& h) {
  const std::size_t x = s.find('x');
  if (x == std::string::npos || x == 0 || x + 1 >= s.size())
    throw sv::ParamError("--resolution expects WxH, got '" + s + "'");
  try {
    std::size_t usedW = 0, usedH = 0;
    w = std::stoi(s.substr(0, x), &usedW);
    h = std::stoi(s.substr(x + 1), &usedH);
    if (usedW != x || usedH != s.size() - x - 1)
      throw sv::ParamError("--resolution expects WxH, got '" + s + "'");
  } catch (const std::logic_error&) {
    throw sv::ParamError("--resolution expects WxH, got '" + s + "'");
  }
  if (w <= 0 || h <= 0) throw sv::ParamError("--resolution must be positive");
}

// "m" marks every loop of scene mesh m, "m:l" one specific loop.
std::function<sv::LoopFormulation(int, int)> make_mixed_policy(
    const std::string& zpassList) {
  struct Entry {
    int mesh;
    int loop;  // -1: all loops of the mesh
  };
  std::vector<Entry> entries;
  std::size_t pos = 0;
  while (pos <= zpassList.size() && !zpassList.empty()) {
    const std::size_t comma = zpassList.find(',', pos);
    const std::string tok =
        zpassList.substr(pos, comma == std::string::npos ? std::string::npos
                                                         : comma - pos);
    if (tok.empty())
      throw sv::ParamError("--mixed-zpass: empty entry in '" + zpassList + "'");
    try {
      const std::size_t colon = tok.find(':');
      Entry e{};
      if (colon == std::string::npos) {
        e.mesh = std::stoi(tok);
        e.loop = -1;
      } else {
        e.mesh = std::stoi(tok.substr(0, colon));
        e.loop = std::stoi(tok.substr(colon + 1));
      }
      if (e.mesh < 0 || (e.loop < -1))
        throw sv::ParamError("--mixed-zpass: negative index in '" + tok + "'");
      entries.push_back(e);
    } catch (const std::logic_error&) {
      throw sv::ParamError("--mixed-zpass: cannot parse '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return [entries](int mesh, int loop) {
    for (const Entry& e : entries)
      if (e.mesh == mesh && (e.loop < 0 || e.loop == loop))
        return sv::LoopFormulation::ZPass;
    return sv::LoopFormulation::ZFail;
  };
}

void write_stencil_snapshot_pgm(const std::vector<std::uint32_t>& stencil,
                                int width, int height, std::uint32_t maxVal,
                                const std::string& path) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(stencil.size());
  const double scale = maxVal > 0 ? 255.0 / static_cast<double>(maxVal) : 0.0;
  for (int y = height - 1; y >= 0; --y)
    for (int x = 0; x < width; ++x) {
      const std::uint32_t s =
          stencil[static_cast<std::size_t>(y) * width + x];
      double v = static_cast<double>(s) * scale;
      if (v > 255.0) v = 255.0;
      bytes.push_back(static_cast<std::uint8_t>(v + 0.5));
    }
  sv::write_pgm_file(width, height, bytes, path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Headless stenciled shadow-volume renderer"};
  std::string scenePath;
  app.add_option("scene", scenePath, "Scene JSON file")->required();
  std::string outPath;
  app.add_option("-o,--output", outPath, "Write the frame as binary PPM");
  std::string resolution = "512x512";
  app.add_option("--resolution", resolution, "Frame size WxH (default 512x512)");
  std::string formulation = "zfail";
  app.add_option("--formulation", formulation,
                 "Stencil counting: zfail | zpass | mixed")
      ->check(CLI::IsMember({"zfail", "zpass", "mixed"}));
  std::string projection = "infinite";
  app.add_option("--projection", projection,
                 "Projection far plane: finite | infinite")
      ->check(CLI::IsMember({"finite", "infinite"}));
  bool depthClamp = false;
  app.add_flag("--depth-clamp", depthClamp,
               "Clamp volume-pass depth instead of clipping at the depth "
               "planes");
  bool twoSided = false;
  app.add_flag("--two-sided", twoSided,
               "Single-submission two-sided stencil (requires wrap ops)");
  bool noWrap = false;
  app.add_flag("--no-wrap", noWrap,
               "Use saturating stencil ops instead of wrapping ones");
  int stencilBits = 8;
  app.add_option("--stencil-bits", stencilBits, "Stencil bit depth (1-32)")
      ->check(CLI::Range(1, 32));
  std::string encoding = "independent";
  app.add_option("--encoding", encoding,
                 "Side-quad encoding: independent | strips | fans")
      ->check(CLI::IsMember({"independent", "strips", "fans"}));
  std::string guard = "incr";
  app.add_option("--avoid-double-blend", guard,
                 "Lighting-pass depth-pass stencil op: incr | keep")
      ->check(CLI::IsMember({"incr", "keep"}));
  bool dropBackCap = false;
  app.add_flag("--drop-directional-back-cap", dropBackCap,
               "Omit the degenerate back cap of directional-light volumes");
  bool verify = false;
  app.add_flag("--verify", verify,
               "Compare stencil against the shadow-ray oracle; exit 2 on "
               "interior mismatch");
  std::string verifyVis = "renderer";
  app.add_option("--verify-visibility", verifyVis,
                 "Oracle visibility source: renderer | rays")
      ->check(CLI::IsMember({"renderer", "rays"}));
  std::string mixedZpass;
  app.add_option("--mixed-zpass", mixedZpass,
                 "mesh[:loop] entries (comma-separated) whose side loops "
                 "count depth-pass under --formulation mixed; all others "
                 "count depth-fail");
  std::vector<std::string> dumpArgs;
  app.add_option("--dump", dumpArgs,
                 "TYPE PATH: write a debug dump (TYPE: depth | stencil | "
                 "mask); repeatable")
      ->type_size(2);
  std::string statsPath;
  app.add_option("--stats", statsPath, "Also write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    sv::PipelineModes modes;
    parse_resolution(resolution, modes.width, modes.height);
    modes.formulation = formulation == "zfail"
                            ? sv::FormulationMode::ZFail
                            : formulation == "zpass"
                                  ? sv::FormulationMode::ZPass
                                  : sv::FormulationMode::PerLoopMixed;
    modes.projection = projection == "finite" ? sv::ProjectionMode::Finite
                                              : sv::ProjectionMode::Infinite;
    modes.depthClamp = depthClamp;
    modes.twoSided = twoSided;
    modes.wrapOps = !noWrap;
    modes.doubleBlendGuard = guard == "incr" ? sv::DoubleBlendGuard::Incr
                                             : sv::DoubleBlendGuard::Keep;
    modes.encoding = encoding == "independent"
                         ? sv::VolumeEncoding::Independent
                         : encoding == "strips"
                               ? sv::VolumeEncoding::LoopStrips
                               : sv::VolumeEncoding::DirectionalFans;
    modes.dropDirectionalBackCap = dropBackCap;
    modes.stencilBits = stencilBits;
    if (modes.formulation == sv::FormulationMode::PerLoopMixed)
      modes.loopPolicy = make_mixed_policy(mixedZpass);

    bool wantsMaskDump = false;
    for (std::size_t i = 0; i + 1 < dumpArgs.size(); i += 2) {
      const std::string& type = dumpArgs[i];
      if (type != "depth" && type != "stencil" && type != "mask")
        throw sv::ParamError("--dump: unknown type '" + type + "'");
      if (type == "mask" || type == "stencil") wantsMaskDump = true;
    }
    modes.recordPerLightStencil = verify || wantsMaskDump;

    const sv::Scene scene = sv::load_scene_json_file(scenePath);

    const auto t0 = std::chrono::steady_clock::now();
    const sv::FrameResult frame = sv::render_frame(scene, modes);
    const auto t1 = std::chrono::steady_clock::now();
    std::cerr << "[timing] render_frame: "
              << std::chrono::duration<double, std::milli>(t1 - t0).count()
              << " ms\n";

    sv::RunReport report;
    report.scenePath = scenePath;
    report.modes = modes;
    report.kernelMode = sv::kernels::active().name;
    report.stats = frame.stats;
    if (verify) {
      report.verifyRequested = true;
      const auto v0 = std::chrono::steady_clock::now();
      report.verification = sv::verify_frame(
          scene, frame, modes,
          verifyVis == "rays" ? sv::VisibilitySource::IndependentRays
                              : sv::VisibilitySource::RendererPoints);
      const auto v1 = std::chrono::steady_clock::now();
      std::cerr << "[timing] verify: "
                << std::chrono::duration<double, std::milli>(v1 - v0).count()
                << " ms\n";
    }

    if (!outPath.empty()) sv::write_ppm_file(frame.framebuffer, outPath);
    for (std::size_t i = 0; i + 1 < dumpArgs.size(); i += 2) {
      const std::string& type = dumpArgs[i];
      const std::string& path = dumpArgs[i + 1];
      if (type == "depth") {
        sv::write_depth_pgm_file(frame.framebuffer, path);
      } else if (type == "stencil") {
        // Raw shadow counts: light 0's stencil before the lighting pass
        // touched it (the post-frame buffer holds lighting-pass guard bits).
        if (frame.perLightStencil.empty())
          throw sv::ParamError("--dump stencil needs at least one light");
        write_stencil_snapshot_pgm(frame.perLightStencil.front(), modes.width,
                                   modes.height,
                                   frame.framebuffer.stencil_max(), path);
      } else {
        if (frame.perLightStencil.empty())
          throw sv::ParamError("--dump mask needs at least one light");
        const sv::ShadowMask mask = sv::mask_from_stencil(
            frame.perLightStencil.front(), frame.visible);
        sv::write_mask_pgm_file(mask, path);
      }
    }

    const std::string json = sv::report_to_json(report);
    std::cout << json;
    if (!statsPath.empty()) {
      std::ofstream out(statsPath);
      if (!out) throw sv::IoError("cannot open '" + statsPath + "'");
      out << json;
      if (!out) throw sv::IoError("write failed: '" + statsPath + "'");
    }

    if (verify && !report.verificationPassed()) return 2;
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
