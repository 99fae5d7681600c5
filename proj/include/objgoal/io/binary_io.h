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

#ifndef OBJGOAL_IO_BINARY_IO_H_
#define OBJGOAL_IO_BINARY_IO_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Little-endian primitive encoding shared by all checkpoint files.
namespace objgoal::io {

void WriteU8(std::ostream& out, std::uint8_t value);
void WriteU32(std::ostream& out, std::uint32_t value);
void WriteU64(std::ostream& out, std::uint64_t value);
void WriteF64(std::ostream& out, double value);
void WriteF64Array(std::ostream& out, std::span<const double> values);
void WriteMagic(std::ostream& out, std::string_view magic);

std::uint8_t ReadU8(std::istream& in);
std::uint32_t ReadU32(std::istream& in);
std::uint64_t ReadU64(std::istream& in);
double ReadF64(std::istream& in);
std::vector<double> ReadF64Array(std::istream& in, std::size_t count);
// Throws Error if the next bytes are not exactly `magic`.
void ExpectMagic(std::istream& in, std::string_view magic);

}  // namespace objgoal::io

#endif  // OBJGOAL_IO_BINARY_IO_H_
