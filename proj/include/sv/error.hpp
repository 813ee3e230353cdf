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

#include <stdexcept>
#include <string>

namespace sv {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument values (bad frustum parameters, mismatched sizes, ...).
struct ParamError : Error {
  using Error::Error;
};

// Geometrically degenerate input (zero-area triangle, zero projection).
struct DegeneracyError : Error {
  using Error::Error;
};

// Mesh fails the closed 2-manifold requirements.
struct NonManifoldError : Error {
  using Error::Error;
};

// Edge sets that cannot be chained into closed loops.
struct TopologyError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace sv
