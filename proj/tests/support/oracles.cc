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

#include "support/oracles.h"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>

namespace pfgnn::testing {

AdjacencyMatrix ToMatrix(const Graph& g) {
  const int n = g.num_vertices();
  AdjacencyMatrix m(n, std::vector<bool>(n, false));
  for (auto [u, v] : g.Edges()) m[u][v] = m[v][u] = true;
  return m;
}

AdjacencyMatrix DecodeGraph6Oracle(const std::string& text) {
  if (text.empty() || text[0] < 63 || text[0] > 125) {
    throw std::runtime_error("oracle handles single-byte headers only");
  }
  const int n = text[0] - 63;
  AdjacencyMatrix m(n, std::vector<bool>(n, false));
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      const int k = j * (j - 1) / 2 + i;
      const int byte = 1 + k / 6;
      const int bit = 5 - k % 6;
      const int value = text.at(byte) - 63;
      if ((value >> bit) & 1) m[i][j] = m[j][i] = true;
    }
  }
  return m;
}

Graph RandomGraph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph::FromEdges(n, edges);
}

bool BruteForceIsomorphic(const Graph& a, const Graph& b) {
  const int n = a.num_vertices();
  if (n != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  const AdjacencyMatrix ma = ToMatrix(a);
  const AdjacencyMatrix mb = ToMatrix(b);

  // BFS order over every component of a.
  std::vector<int> order;
  std::vector<char> seen(n, 0);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::queue<int> queue;
    queue.push(s);
    seen[s] = 1;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop();
      order.push_back(v);
      for (int u = 0; u < n; ++u) {
        if (ma[v][u] && !seen[u]) {
          seen[u] = 1;
          queue.push(u);
        }
      }
    }
  }

  std::vector<int> image(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(int)> extend = [&](int depth) -> bool {
    if (depth == n) return true;
    const int v = order[depth];
    for (int w = 0; w < n; ++w) {
      if (used[w] || a.degree(v) != b.degree(w)) continue;
      bool ok = true;
      for (int d = 0; d < depth && ok; ++d) {
        const int u = order[d];
        ok = ma[v][u] == mb[w][image[u]];
      }
      if (!ok) continue;
      image[v] = w;
      used[w] = 1;
      if (extend(depth + 1)) return true;
      used[w] = 0;
      image[v] = -1;
    }
    return false;
  };
  return extend(0);
}

std::int64_t CountTrianglesBruteForce(const Graph& g) {
  const AdjacencyMatrix m = ToMatrix(g);
  const int n = g.num_vertices();
  std::int64_t count = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        if (m[a][b] && m[b][c] && m[a][c]) ++count;
      }
    }
  }
  return count;
}

std::set<std::set<int>> NaiveStablePartition(const Graph& g,
                                             const std::vector<int>& initial) {
  const int n = g.num_vertices();
  std::vector<std::string> label(n);
  for (int v = 0; v < n; ++v) label[v] = std::to_string(initial[v]);
  std::size_t classes = std::set<std::string>(label.begin(), label.end()).size();
  while (true) {
    std::vector<std::string> next(n);
    for (int v = 0; v < n; ++v) {
      std::vector<std::string> around;
      for (int u : g.neighbors(v)) around.push_back(label[u]);
      std::sort(around.begin(), around.end());
      std::string s = label[v] + "|";
      for (const auto& x : around) s += x + ",";
      next[v] = s;
    }
    // Compress to short ids so labels do not grow without bound.
    std::map<std::string, int> ids;
    for (const auto& s : next) ids.emplace(s, 0);
    int id = 0;
    for (auto& [s, x] : ids) x = id++;
    for (int v = 0; v < n; ++v) next[v] = std::to_string(ids[next[v]]);
    const std::size_t next_classes = ids.size();
    label = std::move(next);
    if (next_classes == classes) break;
    classes = next_classes;
  }
  std::map<std::string, std::set<int>> cells;
  for (int v = 0; v < n; ++v) cells[label[v]].insert(v);
  std::set<std::set<int>> out;
  for (auto& [k, cell] : cells) out.insert(cell);
  return out;
}

}  // namespace pfgnn::testing
