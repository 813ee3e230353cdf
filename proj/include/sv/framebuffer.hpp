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

// Render target: linear float RGB color, float window depth in [0, 1] and an
// N-bit stencil plane (1 <= N <= 32) stored in uint32. Row 0 is the bottom
// of the window; image export flips.

#include <cstdint>
#include <span>
#include <vector>

namespace sv {

class Framebuffer {
 public:
  Framebuffer(int width, int height, int stencilBits = 8);

  int width() const { return width_; }
  int height() const { return height_; }
  int stencil_bits() const { return stencilBits_; }
  std::uint32_t stencil_max() const { return stencilMax_; }

  void clear_color(float r, float g, float b);
  void clear_depth(float z);
  void clear_stencil(std::uint32_t s);

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }
  float* color(int x, int y) { return &color_[3 * index(x, y)]; }
  const float* color(int x, int y) const { return &color_[3 * index(x, y)]; }
  float& depth(int x, int y) { return depth_[index(x, y)]; }
  float depth(int x, int y) const { return depth_[index(x, y)]; }
  std::uint32_t& stencil(int x, int y) { return stencil_[index(x, y)]; }
  std::uint32_t stencil(int x, int y) const { return stencil_[index(x, y)]; }

  std::span<float> color_data() { return color_; }
  std::span<const float> color_data() const { return color_; }
  std::span<float> depth_data() { return depth_; }
  std::span<const float> depth_data() const { return depth_; }
  std::span<std::uint32_t> stencil_data() { return stencil_; }
  std::span<const std::uint32_t> stencil_data() const { return stencil_; }

 private:
  int width_ = 0, height_ = 0, stencilBits_ = 8;
  std::uint32_t stencilMax_ = 255;
  std::vector<float> color_;
  std::vector<float> depth_;
  std::vector<std::uint32_t> stencil_;
};

}  // namespace sv
