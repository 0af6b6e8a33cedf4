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

#ifndef PFGNN_IR_SEARCH_H_
#define PFGNN_IR_SEARCH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "pfgnn/coloring.h"
#include "pfgnn/graph.h"

namespace pfgnn {

inline constexpr std::int64_t kDefaultNodeBudget = 1'000'000;

// Index of the first non-singleton cell. Throws ArgumentError("no target
// cell") on a discrete coloring.
int TargetCell(const Coloring& pi);

// Moves v into a fresh singleton cell placed directly before its old cell.
// Throws ArgumentError if v is already a singleton.
Coloring Individualize(const Coloring& pi, int v);

// Individualize then Refine.
Coloring IndividualizeRefine(const Graph& g, const Coloring& pi, int v);

struct SearchTreeNode {
  Coloring coloring;
  std::vector<int> path;  // individualized vertices, root first
  std::vector<SearchTreeNode> children;
  int depth = 0;

  bool IsLeaf() const { return children.empty(); }
  std::int64_t NodeCount() const;
  std::int64_t LeafCount() const;
  // Serialized tree (paths and colorings, depth-first) for determinism tests.
  std::string Serialize() const;
};

// Full individualization-refinement tree without pruning. Children follow
// the target cell's vertex order. Throws BudgetExceededError when more than
// `node_budget` nodes would be created.
SearchTreeNode BuildTree(const Graph& g, int depth_cap,
                         std::int64_t node_budget = kDefaultNodeBudget);

// Adjacency encoding of g relabeled by a discrete coloring: vertex v moves to
// position color(v). Layout: 4-byte big-endian n, an attribute flag byte,
// attributes by position (4-byte big-endian each, if present), then the upper
// triangle row by row, MSB-first, zero padded.
std::string AdjacencyEncoding(const Graph& g, const Coloring& discrete);

struct CanonicalForm {
  std::string cert;  // raw bytes
  Permutation witness;

  std::string Hex() const;
};

// Lexicographically smallest leaf encoding over the full tree. A negative
// depth cap means "no cap". Throws DepthCapError if a leaf at the cap is not
// discrete and BudgetExceededError past the node budget.
CanonicalForm ComputeCanonicalForm(const Graph& g, int depth_cap = -1,
                                   std::int64_t node_budget = kDefaultNodeBudget);

// Sorted multiset of leaf encodings.
std::vector<std::string> LeafCertificates(
    const Graph& g, int depth_cap = -1,
    std::int64_t node_budget = kDefaultNodeBudget);

bool IsoExact(const Graph& g1, const Graph& g2, int depth_cap = -1,
              std::int64_t node_budget = kDefaultNodeBudget);

std::string ToHex(const std::string& bytes);

}  // namespace pfgnn

#endif  // PFGNN_IR_SEARCH_H_
