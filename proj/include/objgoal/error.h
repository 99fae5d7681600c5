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

#ifndef OBJGOAL_ERROR_H_
#define OBJGOAL_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace objgoal {

// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape disagreement between two tensors or vectors.
class DimensionError : public Error {
 public:
  DimensionError(const std::string& what, std::size_t expected,
                 std::size_t actual)
      : Error(what + ": expected size " + std::to_string(expected) +
              ", got " + std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}

  std::size_t expected() const { return expected_; }
  std::size_t actual() const { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

// NaN or infinity where a finite value is required.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration (world, agent, experiment).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace objgoal

#endif  // OBJGOAL_ERROR_H_
