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

#include "mhdd/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "mhdd/error.hpp"

namespace mhdd {
namespace {

constexpr char kMagic[4] = {'M', 'H', 'D', 'F'};

template <class U>
void put_le(std::ostream& out, U v) {
  unsigned char bytes[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(bytes), sizeof bytes);
}

void put_f64(std::ostream& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }

template <class U>
U get_le(std::istream& in, const std::string& name) {
  unsigned char bytes[sizeof(U)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof bytes))
    throw ParseError(name + ": truncated checkpoint");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(bytes[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in, const std::string& name) {
  return std::bit_cast<double>(get_le<std::uint64_t>(in, name));
}

}  // namespace

void write_checkpoint(const MhdState& state, std::ostream& out) {
  const GridSpec& g = state.grid();
  out.write(kMagic, 4);
  put_le<std::uint32_t>(out, kCheckpointVersion);
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(static_cast<std::int64_t>(g.n_modes)));
  put_f64(out, g.truncation_radius);
  put_f64(out, state.t);
  for (const SpectralVectorField* f : {&state.u, &state.b})
    for (const auto& comp : f->c)
      for (const Complex& z : comp) {
        put_f64(out, z.real());
        put_f64(out, z.imag());
      }
}

void save_checkpoint(const MhdState& state, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_checkpoint(state, out);
  out.flush();
  if (!out) throw IoError("write failed on '" + path + "'");
}

MhdState read_checkpoint(std::istream& in, const std::string& name) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw ParseError(name + ": not a checkpoint (bad magic)");
  const auto version = get_le<std::uint32_t>(in, name);
  if (version != kCheckpointVersion)
    throw ParseError(name + ": unsupported checkpoint version " + std::to_string(version));
  const auto n = static_cast<std::int64_t>(get_le<std::uint64_t>(in, name));
  const double radius = get_f64(in, name);
  const double t = get_f64(in, name);
  if (n < 8 || n > 4096 || n % 2 != 0) throw ParseError(name + ": invalid grid size " + std::to_string(n));
  GridSpec grid{static_cast<int>(n), radius, 2.0 * radius / static_cast<double>(n)};
  try {
    grid.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(name + ": " + e.what());
  }
  MhdState state = MhdState::zeros(grid);
  state.t = t;
  for (SpectralVectorField* f : {&state.u, &state.b})
    for (auto& comp : f->c)
      for (Complex& z : comp) {
        const double re = get_f64(in, name);
        const double im = get_f64(in, name);
        z = Complex(re, im);
      }
  if (in.peek() != std::char_traits<char>::eof()) throw ParseError(name + ": trailing bytes after checkpoint");
  return state;
}

MhdState load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_checkpoint(in, path);
}

}  // namespace mhdd
