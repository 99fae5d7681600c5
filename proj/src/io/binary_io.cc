// Copyright 2026 The objgoal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "objgoal/io/binary_io.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>

#include "objgoal/error.h"

namespace objgoal::io {
namespace {

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian hosts are not supported");

template <typename T>
void WriteLittle(std::ostream& out, T value) {
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
  if (!out) throw Error("checkpoint write failed");
}

template <typename T>
T ReadLittle(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes;
  in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T));
  if (!in) throw Error("checkpoint truncated");
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void WriteU8(std::ostream& out, std::uint8_t value) { WriteLittle(out, value); }
void WriteU32(std::ostream& out, std::uint32_t value) { WriteLittle(out, value); }
void WriteU64(std::ostream& out, std::uint64_t value) { WriteLittle(out, value); }
void WriteF64(std::ostream& out, double value) { WriteLittle(out, value); }

void WriteF64Array(std::ostream& out, std::span<const double> values) {
  for (double v : values) WriteLittle(out, v);
}

void WriteMagic(std::ostream& out, std::string_view magic) {
  out.write(magic.data(), static_cast<std::streamsize>(magic.size()));
  if (!out) throw Error("checkpoint write failed");
}

std::uint8_t ReadU8(std::istream& in) { return ReadLittle<std::uint8_t>(in); }
std::uint32_t ReadU32(std::istream& in) { return ReadLittle<std::uint32_t>(in); }
std::uint64_t ReadU64(std::istream& in) { return ReadLittle<std::uint64_t>(in); }
double ReadF64(std::istream& in) { return ReadLittle<double>(in); }

std::vector<double> ReadF64Array(std::istream& in, std::size_t count) {
  std::vector<double> values(count);
  for (double& v : values) v = ReadLittle<double>(in);
  return values;
}

void ExpectMagic(std::istream& in, std::string_view magic) {
  std::string got(magic.size(), '\0');
  in.read(got.data(), static_cast<std::streamsize>(got.size()));
  if (!in || got != magic) {
    throw Error("bad checkpoint magic, expected '" + std::string(magic) + "'");
  }
}

}  // namespace objgoal::io
