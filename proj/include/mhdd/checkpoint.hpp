/***********************************************************************
*
*  Copyright 2026 The mhdd authors
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
*
************************************************************************/

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "mhdd/fields.hpp"

namespace mhdd {

/// Binary checkpoint layout, all little-endian:
///   bytes 0-3    "MHDF"
///   u32          format version (1)
///   i64          N
///   f64          truncation radius R
///   f64          t
///   6 x N^3 x 2  f64 (re, im) coefficients of u1, u2, u3, b1, b2, b3 in
///                storage order (x1 index slowest)
inline constexpr std::uint32_t kCheckpointVersion = 1;

void write_checkpoint(const MhdState& state, std::ostream& out);
void save_checkpoint(const MhdState& state, const std::string& path);

/// Throws ParseError on bad magic, version or size, IoError if the file
/// cannot be read.
MhdState read_checkpoint(std::istream& in, const std::string& name = "<stream>");
MhdState load_checkpoint(const std::string& path);

}  // namespace mhdd
