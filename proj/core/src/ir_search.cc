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

#include "pfgnn/ir_search.h"

#include <algorithm>
#include <functional>
#include <sstream>

#include "pfgnn/errors.h"

namespace pfgnn {

int TargetCell(const Coloring& pi) {
  for (int c = 0; c < pi.num_cells(); ++c) {
    if (pi.cell(c).size() > 1) return c;
  }
  throw ArgumentError("no target cell");
}

Coloring Individualize(const Coloring& pi, int v) {
  if (v < 0 || v >= pi.num_vertices()) {
    throw ArgumentError("vertex out of range: " + std::to_string(v));
  }
  const int old = pi.color(v);
  if (pi.cell(old).size() == 1) {
    throw ArgumentError("vertex " + std::to_string(v) + " is already a singleton");
  }
  std::vector<int> color = pi.colors();
  for (int& c : color) {
    if (c >= old) ++c;
  }
  color[v] = old;
  return Coloring::FromColors(std::move(color));
}

Coloring IndividualizeRefine(const Graph& g, const Coloring& pi, int v) {
  return Refine(g, Individualize(pi, v));
}

std::int64_t SearchTreeNode::NodeCount() const {
  std::int64_t total = 1;
  for (const auto& child : children) total += child.NodeCount();
  return total;
}

std::int64_t SearchTreeNode::LeafCount() const {
  if (children.empty()) return 1;
  std::int64_t total = 0;
  for (const auto& child : children) total += child.LeafCount();
  return total;
}

std::string SearchTreeNode::Serialize() const {
  std::ostringstream out;
  std::function<void(const SearchTreeNode&)> walk = [&](const SearchTreeNode& node) {
    out << '(' << node.depth << ':';
    for (int v : node.path) out << v << ',';
    out << ColoringToJson(node.coloring);
    for (const auto& child : node.children) walk(child);
    out << ')';
  };
  walk(*this);
  return out.str();
}

namespace {

class NodeCounter {
 public:
  explicit NodeCounter(std::int64_t budget) : budget_(budget) {}
  void Add() {
    if (++count_ > budget_) {
      throw BudgetExceededError("search tree exceeded node budget of " +
                                std::to_string(budget_));
    }
  }

 private:
  std::int64_t budget_;
  std::int64_t count_ = 0;
};

void Expand(const Graph& g, SearchTreeNode& node, int depth_cap,
            NodeCounter& counter) {
  if (node.coloring.IsDiscrete() || node.depth == depth_cap) return;
  const int target = TargetCell(node.coloring);
  const std::vector<int> cell(node.coloring.cell(target).begin(),
                              node.coloring.cell(target).end());
  node.children.reserve(cell.size());
  for (int v : cell) {
    counter.Add();
    SearchTreeNode child;
    child.coloring = IndividualizeRefine(g, node.coloring, v);
    child.path = node.path;
    child.path.push_back(v);
    child.depth = node.depth + 1;
    Expand(g, child, depth_cap, counter);
    node.children.push_back(std::move(child));
  }
}

// Depth-first walk over leaves without materializing the tree.
void VisitLeaves(const Graph& g, const Coloring& pi, int depth, int depth_cap,
                 NodeCounter& counter,
                 const std::function<void(const Coloring&)>& on_leaf) {
  if (pi.IsDiscrete()) {
    on_leaf(pi);
    return;
  }
  if (depth == depth_cap) {
    throw DepthCapError("depth cap too small: non-discrete leaf at depth " +
                        std::to_string(depth));
  }
  const int target = TargetCell(pi);
  for (int v : pi.cell(target)) {
    counter.Add();
    VisitLeaves(g, IndividualizeRefine(g, pi, v), depth + 1, depth_cap,
                counter, on_leaf);
  }
}

}  // namespace

SearchTreeNode BuildTree(const Graph& g, int depth_cap, std::int64_t node_budget) {
  if (depth_cap < 0) throw ArgumentError("depth cap must be non-negative");
  NodeCounter counter(node_budget);
  counter.Add();
  SearchTreeNode root;
  root.coloring = Refine(g, Coloring::Initial(g));
  Expand(g, root, depth_cap, counter);
  return root;
}

std::string AdjacencyEncoding(const Graph& g, const Coloring& discrete) {
  if (!discrete.IsDiscrete() || discrete.num_vertices() != g.num_vertices()) {
    throw ArgumentError("adjacency encoding needs a discrete coloring of g");
  }
  const int n = g.num_vertices();
  std::string out;
  auto put32 = [&out](std::uint32_t x) {
    for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<char>((x >> s) & 0xff));
  };
  put32(static_cast<std::uint32_t>(n));
  out.push_back(g.node_attrs() ? 1 : 0);
  // vertex_at[i] is the vertex placed at position i.
  std::vector<int> vertex_at(n);
  for (int v = 0; v < n; ++v) vertex_at[discrete.color(v)] = v;
  if (g.node_attrs()) {
    for (int i = 0; i < n; ++i) {
      put32(static_cast<std::uint32_t>((*g.node_attrs())[vertex_at[i]]));
    }
  }
  unsigned char acc = 0;
  int filled = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      acc = static_cast<unsigned char>((acc << 1) |
                                       (g.HasEdge(vertex_at[i], vertex_at[j]) ? 1 : 0));
      if (++filled == 8) {
        out.push_back(static_cast<char>(acc));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(acc << (8 - filled)));
  return out;
}

std::string ToHex(const std::string& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (char c : bytes) {
    const auto b = static_cast<unsigned char>(c);
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

std::string CanonicalForm::Hex() const { return ToHex(cert); }

CanonicalForm ComputeCanonicalForm(const Graph& g, int depth_cap,
                                   std::int64_t node_budget) {
  NodeCounter counter(node_budget);
  counter.Add();
  CanonicalForm best;
  bool have = false;
  VisitLeaves(g, Refine(g, Coloring::Initial(g)), 0, depth_cap, counter,
              [&](const Coloring& leaf) {
                std::string cert = AdjacencyEncoding(g, leaf);
                // std::string compares as unsigned bytes via char_traits.
                if (!have || cert < best.cert) {
                  best.cert = std::move(cert);
                  best.witness = Permutation(leaf.colors());
                  have = true;
                }
              });
  return best;
}

std::vector<std::string> LeafCertificates(const Graph& g, int depth_cap,
                                          std::int64_t node_budget) {
  NodeCounter counter(node_budget);
  counter.Add();
  std::vector<std::string> certs;
  VisitLeaves(g, Refine(g, Coloring::Initial(g)), 0, depth_cap, counter,
              [&](const Coloring& leaf) {
                certs.push_back(AdjacencyEncoding(g, leaf));
              });
  std::sort(certs.begin(), certs.end());
  return certs;
}

bool IsoExact(const Graph& g1, const Graph& g2, int depth_cap,
              std::int64_t node_budget) {
  return ComputeCanonicalForm(g1, depth_cap, node_budget).cert ==
         ComputeCanonicalForm(g2, depth_cap, node_budget).cert;
}

}  // namespace pfgnn
