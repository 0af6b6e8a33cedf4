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

#ifndef PFGNN_GENERATORS_H_
#define PFGNN_GENERATORS_H_

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "pfgnn/graph.h"

namespace pfgnn {

struct GeneratorSpec;

namespace gen {
struct Cycle { int n; };
// Edges {i, i+1} and {i, i+skip} mod n.
struct Circulant { int n; int skip; };
struct Rook4x4 {};
struct Shrikhande {};
struct DisjointUnion { std::vector<GeneratorSpec> parts; };
struct ErdosRenyi { int n; double p; std::uint64_t seed; };
struct Complete { int n; };
struct Path { int n; };
// Vertex 0 is the hub, joined to n-1 leaves.
struct Star { int n; };
}  // namespace gen

struct GeneratorSpec {
  std::variant<gen::Cycle, gen::Circulant, gen::Rook4x4, gen::Shrikhande,
               gen::DisjointUnion, gen::ErdosRenyi, gen::Complete, gen::Path,
               gen::Star>
      kind;
};

// Deterministic for a fixed spec (and seed). Throws ArgumentError on invalid
// parameters.
Graph Generate(const GeneratorSpec& spec);

// Parses text such as "circulant(41,2)", "disjoint_union(cycle(3),cycle(3))",
// "erdos_renyi(10,0.3,7)" or "rook4x4".
GeneratorSpec ParseGeneratorSpec(const std::string& text);

// Skips of the ten CSL classes on 41 vertices.
inline constexpr std::array<int, 10> kCslSkips = {2, 3, 4, 5, 6, 9, 11, 12, 13,
                                                  16};
inline constexpr int kCslVertices = 41;

}  // namespace pfgnn

#endif  // PFGNN_GENERATORS_H_
