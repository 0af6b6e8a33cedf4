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

#include "pfgnn/particle_filter.h"

namespace pfgnn {

void PfConfig::Validate() const {
  if (num_particles < 1) throw ArgumentError("K must be at least 1");
  if (steps < 0) throw ArgumentError("T must be non-negative");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ArgumentError("alpha must lie in [0, 1]");
  }
}

std::mt19937_64 StreamRng(std::uint64_t seed, std::uint64_t step,
                          std::uint64_t index, std::uint64_t purpose) {
  auto lo = [](std::uint64_t x) { return static_cast<std::uint32_t>(x); };
  auto hi = [](std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(step), hi(step),
                    lo(index), hi(index), lo(purpose), hi(purpose)};
  return std::mt19937_64(seq);
}

}  // namespace pfgnn
