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

#include "pfgnn/graph.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "pfgnn/errors.h"
#include "pfgnn/graph6.h"

namespace pfgnn {

Graph Graph::FromEdges(int n, std::span<const Edge> edges,
                       std::optional<std::vector<int>> node_attrs) {
  if (n < 0) throw ArgumentError("negative vertex count");
  if (node_attrs && static_cast<int>(node_attrs->size()) != n) {
    throw ArgumentError("node attribute count does not match vertex count");
  }
  Graph g;
  g.adjacency_.assign(n, {});
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ArgumentError("edge endpoint out of range: (" + std::to_string(u) +
                          ", " + std::to_string(v) + ")");
    }
    if (u == v) {
      throw ArgumentError("self-loop at vertex " + std::to_string(u));
    }
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (int v = 0; v < n; ++v) {
    auto& list = g.adjacency_[v];
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw ArgumentError("repeated edge at vertex " + std::to_string(v));
    }
  }
  g.num_edges_ = static_cast<int>(edges.size());
  g.node_attrs_ = std::move(node_attrs);
  return g;
}

bool Graph::HasEdge(int u, int v) const {
  const auto& list = adjacency_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Edge> Graph::Edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (int u = 0; u < num_vertices(); ++u) {
    for (int v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<int> Graph::DegreeSequence() const {
  std::vector<int> out(num_vertices());
  for (int v = 0; v < num_vertices(); ++v) out[v] = degree(v);
  return out;
}

Permutation::Permutation(std::vector<int> map) : map_(std::move(map)) {
  std::vector<char> seen(map_.size(), 0);
  for (int x : map_) {
    if (x < 0 || x >= size() || seen[x]) {
      throw ArgumentError("permutation is not a bijection");
    }
    seen[x] = 1;
  }
}

Permutation Permutation::Identity(int n) {
  std::vector<int> map(n);
  std::iota(map.begin(), map.end(), 0);
  return Permutation(std::move(map));
}

Permutation Permutation::Random(int n, std::mt19937_64& rng) {
  std::vector<int> map(n);
  std::iota(map.begin(), map.end(), 0);
  // Fisher-Yates with an explicit draw so the result does not depend on the
  // standard library's shuffle implementation.
  for (int i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(map[i], map[pick(rng)]);
  }
  return Permutation(std::move(map));
}

Permutation Permutation::Inverse() const {
  std::vector<int> inv(map_.size());
  for (int v = 0; v < size(); ++v) inv[map_[v]] = v;
  return Permutation(std::move(inv));
}

Graph ApplyPermutation(const Graph& g, const Permutation& p) {
  if (p.size() != g.num_vertices()) {
    throw ArgumentError("permutation length " + std::to_string(p.size()) +
                        " does not match vertex count " +
                        std::to_string(g.num_vertices()));
  }
  std::vector<Edge> edges = g.Edges();
  for (auto& [u, v] : edges) {
    u = p(u);
    v = p(v);
  }
  std::optional<std::vector<int>> attrs;
  if (g.node_attrs()) {
    attrs.emplace(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) (*attrs)[p(v)] = (*g.node_attrs())[v];
  }
  return Graph::FromEdges(g.num_vertices(), edges, std::move(attrs));
}

namespace {

bool ParseInts(std::string_view line, std::vector<long long>& out) {
  out.clear();
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    if (i >= line.size()) break;
    long long value = 0;
    auto [ptr, ec] =
        std::from_chars(line.data() + i, line.data() + line.size(), value);
    if (ec != std::errc()) return false;
    out.push_back(value);
    i = ptr - line.data();
  }
  return true;
}

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

Graph ParseEdgeList(std::string_view text) {
  std::vector<std::string_view> lines = SplitLines(text);
  std::size_t line_no = 0;
  auto next_line = [&]() -> std::string_view {
    while (line_no < lines.size() && IsBlank(lines[line_no])) ++line_no;
    if (line_no >= lines.size()) {
      throw ParseError("unexpected end of edge list", line_no + 1);
    }
    return lines[line_no++];
  };
  std::vector<long long> ints;
  if (!ParseInts(next_line(), ints) || ints.size() != 2 || ints[0] < 0 ||
      ints[1] < 0) {
    throw ParseError("edge list header must be \"n m\"", line_no);
  }
  const int n = static_cast<int>(ints[0]);
  const long long m = ints[1];
  std::vector<Edge> edges;
  edges.reserve(m);
  for (long long e = 0; e < m; ++e) {
    if (!ParseInts(next_line(), ints) || ints.size() != 2) {
      throw ParseError("edge line must be \"u v\"", line_no);
    }
    if (ints[0] < 0 || ints[1] < 0 || ints[0] >= n || ints[1] >= n) {
      throw ParseError("edge endpoint out of range", line_no);
    }
    edges.emplace_back(static_cast<int>(ints[0]), static_cast<int>(ints[1]));
  }
  while (line_no < lines.size()) {
    if (!IsBlank(lines[line_no])) {
      throw ParseError("trailing content after edge list", line_no + 1);
    }
    ++line_no;
  }
  try {
    return Graph::FromEdges(n, edges);
  } catch (const ArgumentError& e) {
    throw ParseError(e.what(), 0);
  }
}

std::string ToEdgeList(const Graph& g) {
  std::ostringstream out;
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& [u, v] : g.Edges()) out << u << ' ' << v << '\n';
  return out.str();
}

std::vector<Graph> ReadGraphFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open graph file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  std::vector<std::string_view> lines = SplitLines(text);
  std::vector<long long> ints;
  for (std::string_view line : lines) {
    if (IsBlank(line)) continue;
    // An edge list starts with two integers; graph6 never contains a space.
    if (ParseInts(line, ints) && ints.size() == 2) {
      return {ParseEdgeList(text)};
    }
    break;
  }
  std::vector<Graph> graphs;
  for (std::string_view line : lines) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.remove_suffix(1);
    }
    if (line.empty()) continue;
    graphs.push_back(ParseGraph6(line));
  }
  return graphs;
}

}  // namespace pfgnn
