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
#include "sv/report.hpp"

#include <json.hpp>

#include "sv/error.hpp"

namespace sv {

std::vector<LightVerification> verify_frame(const Scene& scene,
                                            const FrameResult& frame,
                                            const PipelineModes& modes,
                                            VisibilitySource source) {
  if (frame.perLightStencil.size() != scene.lights.size())
    throw ParamError(
        "verify_frame needs per-light stencil snapshots; render with "
        "recordPerLightStencil");
  std::vector<LightVerification> out;
  for (std::size_t li = 0; li < scene.lights.size(); ++li) {
    LightVerification v;
    v.lightIndex = li;
    const std::vector<std::uint32_t>& snap = frame.perLightStencil[li];
    const ShadowMask rendered = mask_from_stencil(snap, frame.visible);
    const ShadowMask reference = reference_mask(
        scene, li, modes.width, modes.height, source, &frame.visible);
    v.mask = compare_shadow_masks(rendered, reference);
    v.counts =
        compare_stencil_counts(scene, li, snap, frame.visible, modes.wrapOps,
                               frame.framebuffer.stencil_max());
    out.push_back(v);
  }
  return out;
}

const char* mode_name(FormulationMode m) {
  switch (m) {
    case FormulationMode::ZFail: return "zfail";
    case FormulationMode::ZPass: return "zpass";
    case FormulationMode::PerLoopMixed: return "mixed";
  }
  return "?";
}

const char* mode_name(ProjectionMode m) {
  switch (m) {
    case ProjectionMode::Finite: return "finite";
    case ProjectionMode::Infinite: return "infinite";
  }
  return "?";
}

const char* mode_name(VolumeEncoding e) {
  switch (e) {
    case VolumeEncoding::Independent: return "independent";
    case VolumeEncoding::LoopStrips: return "strips";
    case VolumeEncoding::DirectionalFans: return "fans";
  }
  return "?";
}

const char* mode_name(DoubleBlendGuard g) {
  switch (g) {
    case DoubleBlendGuard::Incr: return "incr";
    case DoubleBlendGuard::Keep: return "keep";
  }
  return "?";
}

std::string report_to_json(const RunReport& report) {
  using json = nlohmann::ordered_json;
  json j;
  j["scene"] = report.scenePath;
  j["resolution"] = {{"width", report.modes.width},
                     {"height", report.modes.height}};
  json modes;
  modes["formulation"] = mode_name(report.modes.formulation);
  modes["projection"] = mode_name(report.modes.projection);
  modes["depthClamp"] = report.modes.depthClamp;
  modes["twoSided"] = report.modes.twoSided;
  modes["wrapOps"] = report.modes.wrapOps;
  modes["doubleBlendGuard"] = mode_name(report.modes.doubleBlendGuard);
  modes["encoding"] = mode_name(report.modes.encoding);
  modes["dropDirectionalBackCap"] = report.modes.dropDirectionalBackCap;
  modes["stencilBits"] = report.modes.stencilBits;
  j["modes"] = modes;
  j["kernels"] = report.kernelMode;
  json stats;
  stats["shadowFragments"] = report.stats.shadowFragments;
  stats["stencilWrites"] = report.stats.stencilWrites;
  stats["saturations"] = report.stats.saturations;
  stats["volumeVerticesSubmitted"] = report.stats.volumeVerticesSubmitted;
  stats["capVerticesSubmitted"] = report.stats.capVerticesSubmitted;
  stats["volumeCount"] = report.stats.volumeCount;
  stats["loopCount"] = report.stats.loopCount;
  j["stats"] = stats;
  json verify;
  verify["requested"] = report.verifyRequested;
  if (report.verifyRequested) {
    verify["passed"] = report.verificationPassed();
    json lights = json::array();
    for (const LightVerification& v : report.verification) {
      json lv;
      lv["light"] = v.lightIndex;
      lv["mask"] = {{"comparablePixels", v.mask.comparablePixels},
                    {"mismatches", v.mask.mismatches},
                    {"boundaryPixels", v.mask.boundaryPixels},
                    {"boundaryMismatches", v.mask.boundaryMismatches},
                    {"interiorMismatches", v.mask.interiorMismatches()}};
      lv["stencilCounts"] = {
          {"comparablePixels", v.counts.comparablePixels},
          {"mismatches", v.counts.mismatches},
          {"boundaryPixels", v.counts.boundaryPixels},
          {"boundaryMismatches", v.counts.boundaryMismatches},
          {"interiorMismatches", v.counts.interiorMismatches()},
          {"oddCountPixels", v.counts.oddCountPixels},
          {"maxExpectedCount", v.counts.maxExpectedCount}};
      lv["passed"] = v.pass();
      lights.push_back(lv);
    }
    verify["lights"] = lights;
  }
  j["verify"] = verify;
  return j.dump(2) + "\n";
}

}  // namespace sv
