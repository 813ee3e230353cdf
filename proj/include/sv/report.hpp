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
#pragma once

// Verification driver and run report. The report serializes to deterministic
// JSON (stable key order, integer counters only, no timings), so repeated
// runs of the same configuration produce byte-identical output.

#include <cstddef>
#include <string>
#include <vector>

#include "sv/oracle.hpp"
#include "sv/pipeline.hpp"
#include "sv/scene.hpp"

namespace sv {

struct LightVerification {
  std::size_t lightIndex = 0;
  MaskDiff mask;
  StencilCountCheck counts;
  // Interior (non-boundary) disagreements are real errors; boundary ones are
  // half-pixel sampling artifacts and do not fail verification.
  bool pass() const {
    return mask.interiorMismatches() == 0 && counts.interiorMismatches() == 0;
  }
};

// Runs mask and stencil-count verification for every light. The frame must
// have been rendered with recordPerLightStencil so the per-light stencil
// state (before lighting-pass writes) is available.
std::vector<LightVerification> verify_frame(
    const Scene& scene, const FrameResult& frame, const PipelineModes& modes,
    VisibilitySource source = VisibilitySource::RendererPoints);

struct RunReport {
  std::string scenePath;
  PipelineModes modes;
  std::string kernelMode;  // resolved dispatch table name
  PassStats stats;
  bool verifyRequested = false;
  std::vector<LightVerification> verification;

  bool verificationPassed() const {
    for (const LightVerification& v : verification)
      if (!v.pass()) return false;
    return true;
  }
};

const char* mode_name(FormulationMode m);
const char* mode_name(ProjectionMode m);
const char* mode_name(VolumeEncoding e);
const char* mode_name(DoubleBlendGuard g);

std::string report_to_json(const RunReport& report);

}  // namespace sv
