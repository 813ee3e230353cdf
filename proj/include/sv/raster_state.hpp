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

// Fixed-function fragment pipeline state, mirroring the small slice of GL
// semantics the shadow pipeline needs. Per-fragment order is: stencil test,
// depth test, then exactly one stencil operation (stencil-fail, depth-fail or
// depth-pass); depth and color are written only when both tests pass.

#include <cstdint>

namespace sv {

enum class DepthFunc : std::uint8_t { Less, LessEqual, Equal, Always };
enum class StencilFunc : std::uint8_t { Always, Equal };
enum class StencilOp : std::uint8_t {
  Keep,
  Zero,
  Incr,      // saturates at 2^bits - 1
  Decr,      // saturates at 0
  IncrWrap,  // wraps modulo 2^bits
  DecrWrap,
};
enum class CullMode : std::uint8_t { None, Front, Back };
enum class BlendMode : std::uint8_t { Replace, Add };

struct StencilFaceState {
  StencilFunc func = StencilFunc::Always;
  std::uint32_t ref = 0;
  std::uint32_t compareMask = ~0u;
  std::uint32_t writeMask = ~0u;
  StencilOp opStencilFail = StencilOp::Keep;
  StencilOp opDepthFail = StencilOp::Keep;
  StencilOp opDepthPass = StencilOp::Keep;
};

struct RenderState {
  bool depthTest = true;
  DepthFunc depthFunc = DepthFunc::Less;
  bool depthWrite = true;
  bool colorWrite = true;
  CullMode cull = CullMode::None;
  BlendMode blend = BlendMode::Replace;
  bool stencilTest = false;
  // Separate state per facing; with twoSided = false stencilFront applies to
  // both orientations.
  bool twoSided = false;
  StencilFaceState stencilFront;
  StencilFaceState stencilBack;
  // Clip against a small positive-w guard instead of the two depth planes,
  // then clamp window depth to [0, 1] (volume-pass depth clamping).
  bool depthClamp = false;
};

}  // namespace sv
