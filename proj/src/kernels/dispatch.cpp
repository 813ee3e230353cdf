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
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <utility>

#include "sv/error.hpp"
#include "tables.hpp"

namespace sv::kernels {

RayPlan make_ray_plan(const Vec3& org, const Vec3& dir, double tMax) {
  const double d[3] = {dir.x, dir.y, dir.z};
  const double ad[3] = {std::abs(d[0]), std::abs(d[1]), std::abs(d[2])};
  int kz = 0;
  if (ad[1] > ad[kz]) kz = 1;
  if (ad[2] > ad[kz]) kz = 2;
  if (d[kz] == 0.0) throw ParamError("make_ray_plan: zero direction");
  int kx = (kz + 1) % 3;
  int ky = (kx + 1) % 3;
  if (d[kz] < 0.0) std::swap(kx, ky);  // preserve winding of the 2D test
  RayPlan plan;
  plan.org[0] = org.x;
  plan.org[1] = org.y;
  plan.org[2] = org.z;
  plan.kx = kx;
  plan.ky = ky;
  plan.kz = kz;
  plan.sx = d[kx] / d[kz];
  plan.sy = d[ky] / d[kz];
  plan.sz = 1.0 / d[kz];
  plan.tMax = tMax;
  return plan;
}

namespace {

bool hw_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Mode detect_mode() {
  if (const char* env = std::getenv("SV_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Mode::Scalar;
    if (std::strcmp(env, "avx2") == 0) return Mode::Avx2;
    if (std::strcmp(env, "neon") == 0) return Mode::Neon;
    // anything else, including "auto", falls through to detection
  }
#if defined(__aarch64__)
  return Mode::Neon;
#else
  return hw_avx2() ? Mode::Avx2 : Mode::Scalar;
#endif
}

Mode g_forced = Mode::Auto;
Mode g_resolved = Mode::Auto;  // Auto means "not resolved yet"

const KernelTable& table_for(Mode m) {
  switch (m) {
#if defined(__x86_64__) || defined(_M_X64)
    case Mode::Avx2:
      return avx2_table();
#endif
#if defined(__aarch64__)
    case Mode::Neon:
      return neon_table();
#endif
    default:
      return scalar_table();
  }
}

Mode resolved_mode() {
  if (g_forced != Mode::Auto) return g_forced;
  if (g_resolved == Mode::Auto) {
    Mode m = detect_mode();
    if (!mode_supported(m)) m = Mode::Scalar;
    g_resolved = m;
  }
  return g_resolved;
}

}  // namespace

bool mode_supported(Mode m) {
  switch (m) {
    case Mode::Auto:
    case Mode::Scalar:
      return true;
    case Mode::Avx2:
      return hw_avx2();
    case Mode::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& active() { return table_for(resolved_mode()); }

Mode active_mode() { return resolved_mode(); }

void force_mode(Mode m) {
  if (m != Mode::Auto && !mode_supported(m))
    throw ParamError("force_mode: kernel mode not supported on this machine");
  g_forced = m;
  g_resolved = Mode::Auto;
}

}  // namespace sv::kernels
