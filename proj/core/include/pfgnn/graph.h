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

#ifndef PFGNN_GRAPH_H_
#define PFGNN_GRAPH_H_

#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pfgnn {

using Edge = std::pair<int, int>;

// Immutable simple undirected graph on vertices 0..n-1. Neighbor lists are
// sorted ascending. Node attributes are optional integer labels.
class Graph {
 public:
  Graph() = default;

  // Throws ArgumentError on self-loops, repeated edges, out-of-range
  // endpoints or an attribute vector of the wrong length.
  static Graph FromEdges(int n, std::span<const Edge> edges,
                         std::optional<std::vector<int>> node_attrs = {});

  int num_vertices() const { return static_cast<int>(adjacency_.size()); }
  int num_edges() const { return num_edges_; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  std::span<const int> neighbors(int v) const { return adjacency_[v]; }
  bool HasEdge(int u, int v) const;

  const std::optional<std::vector<int>>& node_attrs() const {
    return node_attrs_;
  }

  // All edges (u, v) with u < v, lexicographically sorted.
  std::vector<Edge> Edges() const;
  std::vector<int> DegreeSequence() const;

  bool operator==(const Graph& other) const = default;

 private:
  std::vector<std::vector<int>> adjacency_;
  std::optional<std::vector<int>> node_attrs_;
  int num_edges_ = 0;
};

// A bijection on 0..n-1; map()[v] is the image of v.
class Permutation {
 public:
  Permutation() = default;
  // Throws ArgumentError unless `map` is a bijection.
  explicit Permutation(std::vector<int> map);

  static Permutation Identity(int n);
  static Permutation Random(int n, std::mt19937_64& rng);

  int size() const { return static_cast<int>(map_.size()); }
  int operator()(int v) const { return map_[v]; }
  const std::vector<int>& map() const { return map_; }
  Permutation Inverse() const;

  bool operator==(const Permutation& other) const = default;

 private:
  std::vector<int> map_;
};

// Relabels vertex v as p(v): edge (u, v) is in the result iff
// (p^-1(u), p^-1(v)) is in g. Node attributes move with their vertex.
Graph ApplyPermutation(const Graph& g, const Permutation& p);

// Plain edge-list text: first line "n m", then m lines "u v".
Graph ParseEdgeList(std::string_view text);
std::string ToEdgeList(const Graph& g);

// Reads a file holding either graph6 lines or one edge list (detected by
// the first line). Returns every graph in the file.
std::vector<Graph> ReadGraphFile(const std::string& path);

}  // namespace pfgnn

#endif  // PFGNN_GRAPH_H_
