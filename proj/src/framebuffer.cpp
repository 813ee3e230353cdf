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
#include "sv/framebuffer.hpp"

#include "sv/error.hpp"
#include "sv/kernels.hpp"

namespace sv {

Framebuffer::Framebuffer(int width, int height, int stencilBits)
    : width_(width), height_(height), stencilBits_(stencilBits) {
  if (width <= 0 || height <= 0)
    throw ParamError("Framebuffer: dimensions must be positive");
  if (stencilBits < 1 || stencilBits > 32)
    throw ParamError("Framebuffer: stencil bits must lie in [1, 32]");
  stencilMax_ = stencilBits == 32 ? ~0u : ((1u << stencilBits) - 1u);
  const std::size_t n =
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  color_.assign(3 * n, 0.0f);
  depth_.assign(n, 1.0f);
  stencil_.assign(n, 0u);
}

void Framebuffer::clear_color(float r, float g, float b) {
  const std::size_t n = depth_.size();
  auto& k = kernels::active();
  // Interleaved RGB: fall back to a triple fill only when all equal.
  if (r == g && g == b) {
    k.fill_f32(color_.data(), r, color_.size());
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      color_[3 * i + 0] = r;
      color_[3 * i + 1] = g;
      color_[3 * i + 2] = b;
    }
  }
}

void Framebuffer::clear_depth(float z) {
  kernels::active().fill_f32(depth_.data(), z, depth_.size());
}

void Framebuffer::clear_stencil(std::uint32_t s) {
  kernels::active().fill_u32(stencil_.data(), s & stencilMax_,
                             stencil_.size());
}

}  // namespace sv
