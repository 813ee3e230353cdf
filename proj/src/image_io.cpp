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
#include "sv/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "sv/error.hpp"

namespace sv {

std::uint8_t encode_srgb_byte(float linear) {
  float v = linear < 0.0f ? 0.0f : (linear > 1.0f ? 1.0f : linear);
  v = std::pow(v, 1.0f / 2.2f);
  return static_cast<std::uint8_t>(std::lround(v * 255.0f));
}

void write_ppm(const Framebuffer& fb, std::ostream& out) {
  out << "P6\n" << fb.width() << ' ' << fb.height() << "\n255\n";
  std::vector<std::uint8_t> row(static_cast<size_t>(fb.width()) * 3);
  for (int y = fb.height() - 1; y >= 0; --y) {
    for (int x = 0; x < fb.width(); ++x) {
      const float* c = fb.color(x, y);
      row[3 * static_cast<size_t>(x) + 0] = encode_srgb_byte(c[0]);
      row[3 * static_cast<size_t>(x) + 1] = encode_srgb_byte(c[1]);
      row[3 * static_cast<size_t>(x) + 2] = encode_srgb_byte(c[2]);
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  }
}

namespace {

std::ofstream open_binary(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

}  // namespace

void write_ppm_file(const Framebuffer& fb, const std::string& path) {
  auto out = open_binary(path);
  write_ppm(fb, out);
  if (!out) throw IoError("failed writing " + path);
}

void write_pgm_file(int width, int height,
                    const std::vector<std::uint8_t>& topDownPixels,
                    const std::string& path) {
  if (topDownPixels.size() !=
      static_cast<size_t>(width) * static_cast<size_t>(height))
    throw ParamError("write_pgm_file: pixel count mismatch");
  auto out = open_binary(path);
  out << "P5\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(topDownPixels.data()),
            static_cast<std::streamsize>(topDownPixels.size()));
  if (!out) throw IoError("failed writing " + path);
}

void write_depth_pgm_file(const Framebuffer& fb, const std::string& path) {
  std::vector<std::uint8_t> px(static_cast<size_t>(fb.width()) *
                               static_cast<size_t>(fb.height()));
  size_t i = 0;
  for (int y = fb.height() - 1; y >= 0; --y)
    for (int x = 0; x < fb.width(); ++x)
      px[i++] = static_cast<std::uint8_t>(
          std::lround(255.0f * std::min(1.0f, std::max(0.0f, fb.depth(x, y)))));
  write_pgm_file(fb.width(), fb.height(), px, path);
}

void write_stencil_pgm_file(const Framebuffer& fb, const std::string& path) {
  std::vector<std::uint8_t> px(static_cast<size_t>(fb.width()) *
                               static_cast<size_t>(fb.height()));
  const double scale = fb.stencil_max() > 0 ? 255.0 / fb.stencil_max() : 0.0;
  size_t i = 0;
  for (int y = fb.height() - 1; y >= 0; --y)
    for (int x = 0; x < fb.width(); ++x)
      px[i++] = static_cast<std::uint8_t>(
          std::lround(scale * fb.stencil(x, y)));
  write_pgm_file(fb.width(), fb.height(), px, path);
}

}  // namespace sv
