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

#ifndef PFGNN_COLORING_H_
#define PFGNN_COLORING_H_

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pfgnn/graph.h"

namespace pfgnn {

// Ordered partition of 0..n-1. Colors are contiguous 0..k-1 and cell c holds
// the vertices of color c in ascending order. Cell order carries meaning: it
// is assigned from sorted refinement signatures, so it is equivariant under
// vertex relabeling.
class Coloring {
 public:
  Coloring() = default;

  // Throws ArgumentError unless colors are exactly 0..k-1 for some k.
  static Coloring FromColors(std::vector<int> color);
  static Coloring Uniform(int n);
  // Vertex v gets color v.
  static Coloring Discrete(int n);
  // Uniform without attributes; otherwise one cell per attribute value, in
  // ascending attribute order.
  static Coloring Initial(const Graph& g);

  int num_vertices() const { return static_cast<int>(color_.size()); }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  bool IsDiscrete() const { return num_cells() == num_vertices(); }
  int color(int v) const { return color_[v]; }
  std::span<const int> cell(int c) const { return cells_[c]; }
  const std::vector<int>& colors() const { return color_; }
  const std::vector<std::vector<int>>& cells() const { return cells_; }

  bool operator==(const Coloring& other) const { return color_ == other.color_; }

 private:
  explicit Coloring(std::vector<int> color);

  std::vector<int> color_;
  std::vector<std::vector<int>> cells_;
};

// Relabels the coloring alongside ApplyPermutation: vertex p(v) takes v's
// color.
Coloring PermuteColoring(const Coloring& pi, const Permutation& p);

// 1-WL refinement to the coarsest equitable partition finer than `pi`. Each
// round's signature is (own color, sorted neighbor colors); distinct
// signatures are sorted and numbered in that order, so no two different
// signatures ever share a color.
Coloring Refine(const Graph& g, const Coloring& pi);

// Same as Refine but returns the coloring after every round, starting with
// `pi` itself and ending with the stable coloring.
std::vector<Coloring> RefineRounds(const Graph& g, const Coloring& pi);

bool IsEquitable(const Graph& g, const Coloring& pi);

// True iff `finer` is finer than or equal to `coarser`: every cell of `finer`
// sits inside a cell of `coarser` and color order is preserved.
bool Refines(const Coloring& finer, const Coloring& coarser);

// 128-bit fingerprint.
struct Digest {
  std::array<std::uint8_t, 16> bytes{};

  std::string Hex() const;
  auto operator<=>(const Digest&) const = default;
};

// Fingerprint of the quotient structure of (g, pi): for every cell in cell
// order, its size, attribute multiset, and the sorted per-vertex counts of
// neighbors in each cell. Invariant under relabeling g and pi together.
Digest Certificate(const Graph& g, const Coloring& pi);

// JSON array of cell arrays, e.g. [[1],[0,2]].
std::string ColoringToJson(const Coloring& pi);
Coloring ColoringFromJson(const std::string& json);

}  // namespace pfgnn

#endif  // PFGNN_COLORING_H_
