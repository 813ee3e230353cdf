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

// Binary PPM/PGM writers. Framebuffer row 0 is the window bottom; files are
// written top row first. Color export applies gamma 2.2; depth and stencil
// export are linear scalings.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sv/framebuffer.hpp"

namespace sv {

// Quantizes linear [0,1] to 8 bits with gamma 1/2.2.
std::uint8_t encode_srgb_byte(float linear);

void write_ppm(const Framebuffer& fb, std::ostream& out);
void write_ppm_file(const Framebuffer& fb, const std::string& path);

// Depth scaled by 255; stencil scaled so stencil_max maps to 255.
void write_depth_pgm_file(const Framebuffer& fb, const std::string& path);
void write_stencil_pgm_file(const Framebuffer& fb, const std::string& path);

// Raw 8-bit grayscale, rows already in file order.
void write_pgm_file(int width, int height,
                    const std::vector<std::uint8_t>& topDownPixels,
                    const std::string& path);

}  // namespace sv
