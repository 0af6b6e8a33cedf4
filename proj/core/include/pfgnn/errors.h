// Copyright 2026 The pfgnn Authors
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

#ifndef PFGNN_ERRORS_H_
#define PFGNN_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pfgnn {

// Invalid parameters or mismatched shapes/lengths.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed textual input. `offset` is the byte (graph6) or line (edge list)
// at which decoding failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at offset " + std::to_string(offset) +
                           ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Non-finite or degenerate numbers. `particle` is -1 when not attributable.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, int particle = -1,
                          int step = -1)
      : std::runtime_error(what), particle_(particle), step_(step) {}
  int particle() const { return particle_; }
  int step() const { return step_; }

 private:
  int particle_;
  int step_;
};

// The exact search tree grew past its node budget.
class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A search-tree leaf at the depth cap was not discrete.
class DepthCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation not defined for this particle state kind.
class UnsupportedModeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pfgnn

#endif  // PFGNN_ERRORS_H_
