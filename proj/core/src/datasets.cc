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

#include "pfgnn/datasets.h"

#include <algorithm>
#include <array>
#include <filesystem>
#include <random>

#include "pfgnn/errors.h"
#include "pfgnn/generators.h"

namespace pfgnn {
namespace {

Graph Gen(const std::string& text) { return Generate(ParseGeneratorSpec(text)); }

Graph CompleteBipartite(int a, int b) {
  std::vector<Edge> edges;
  for (int u = 0; u < a; ++u) {
    for (int v = 0; v < b; ++v) edges.emplace_back(u, a + v);
  }
  return Graph::FromEdges(a + b, edges);
}

// Two copies of C_n joined by a perfect matching.
Graph Prism(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    edges.emplace_back(i, (i + 1) % n);
    edges.emplace_back(n + i, n + (i + 1) % n);
    edges.emplace_back(i, n + i);
  }
  return Graph::FromEdges(2 * n, edges);
}

Graph Hypercube3() {
  std::vector<Edge> edges;
  for (int v = 0; v < 8; ++v) {
    for (int bit = 1; bit < 8; bit <<= 1) {
      if (v < (v ^ bit)) edges.emplace_back(v, v ^ bit);
    }
  }
  return Graph::FromEdges(8, edges);
}

Graph RandomGnp(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph::FromEdges(n, edges);
}

std::vector<LabeledGraph> BalancedTriangles(int size, int min_n, int max_n,
                                            std::mt19937_64& rng) {
  constexpr int kClasses = 10;
  std::array<int, kClasses> quota{};
  for (int c = 0; c < kClasses; ++c) {
    quota[c] = size / kClasses + (c < size % kClasses ? 1 : 0);
  }
  std::uniform_int_distribution<int> size_dist(min_n, max_n);
  std::uniform_real_distribution<double> density(0.05, 0.6);
  std::vector<LabeledGraph> out;
  while (static_cast<int>(out.size()) < size) {
    Graph g = RandomGnp(size_dist(rng), density(rng), rng);
    const std::int64_t t = CountTriangles(g);
    if (t >= kClasses || quota[t] == 0) continue;
    --quota[t];
    out.push_back({std::move(g), static_cast<int>(t)});
  }
  return out;
}

}  // namespace

std::vector<LabeledGraph> MakeCsl(std::uint64_t seed) {
  constexpr int kCopies = 15;
  std::mt19937_64 rng(seed);
  std::vector<LabeledGraph> out;
  for (int c = 0; c < static_cast<int>(kCslSkips.size()); ++c) {
    const Graph base = Generate({gen::Circulant{kCslVertices, kCslSkips[c]}});
    for (int i = 0; i < kCopies; ++i) {
      out.push_back({ApplyPermutation(base, Permutation::Random(kCslVertices, rng)), c});
    }
  }
  return out;
}

std::vector<GraphPair> MakeSrgPair() {
  return {{"rook4x4/shrikhande", Gen("rook4x4"), Gen("shrikhande"), false}};
}

std::vector<GraphPair> MakeWl1Pairs() {
  std::vector<GraphPair> out;
  out.push_back({"C6/2C3", Gen("cycle(6)"),
                 Gen("disjoint_union(cycle(3),cycle(3))"), false});
  out.push_back({"K33/prism3", CompleteBipartite(3, 3), Prism(3), false});
  out.push_back({"C8/2C4", Gen("cycle(8)"),
                 Gen("disjoint_union(cycle(4),cycle(4))"), false});
  out.push_back({"C9/3C3", Gen("cycle(9)"),
                 Gen("disjoint_union(cycle(3),cycle(3),cycle(3))"), false});
  out.push_back({"Q3/2K4", Hypercube3(),
                 Gen("disjoint_union(complete(4),complete(4))"), false});
  out.push_back({"rook4x4/shrikhande", Gen("rook4x4"), Gen("shrikhande"), false});
  out.push_back({"csl41_2/csl41_3", Gen("circulant(41,2)"), Gen("circulant(41,3)"),
                 false});
  return out;
}

std::vector<GraphPair> ReadPairFile(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    throw ArgumentError("pair file not found: " + path);
  }
  const std::vector<Graph> graphs = ReadGraphFile(path);
  std::vector<GraphPair> out;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    for (std::size_t j = i + 1; j < graphs.size(); ++j) {
      out.push_back({std::to_string(i) + "/" + std::to_string(j), graphs[i],
                     graphs[j], false});
    }
  }
  return out;
}

std::vector<GraphPair> MakeIsomorphicControls(int count, int min_n, int max_n,
                                              std::uint64_t seed) {
  if (min_n < 1 || max_n < min_n) throw ArgumentError("bad control size range");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size_dist(min_n, max_n);
  std::uniform_real_distribution<double> density(0.2, 0.8);
  std::vector<GraphPair> out;
  for (int i = 0; i < count; ++i) {
    const int n = size_dist(rng);
    Graph g = RandomGnp(n, density(rng), rng);
    Graph h = ApplyPermutation(g, Permutation::Random(n, rng));
    out.push_back({"control" + std::to_string(i), std::move(g), std::move(h), true});
  }
  return out;
}

std::int64_t CountTriangles(const Graph& g) {
  std::int64_t count = 0;
  for (int u = 0; u < g.num_vertices(); ++u) {
    for (int v : g.neighbors(u)) {
      if (v <= u) continue;
      for (int w : g.neighbors(v)) {
        if (w > v && g.HasEdge(u, w)) ++count;
      }
    }
  }
  return count;
}

TrianglesSplit MakeTrianglesSmall(std::uint64_t seed, const TrianglesOptions& options) {
  if (options.train_min_n < 3 || options.test_min_n < 3 ||
      options.train_max_n < options.train_min_n ||
      options.test_max_n < options.test_min_n) {
    throw ArgumentError("bad triangles size range");
  }
  std::mt19937_64 rng(seed);
  TrianglesSplit split;
  split.train = BalancedTriangles(options.train_size, options.train_min_n,
                                  options.train_max_n, rng);
  split.test = BalancedTriangles(options.test_size, options.test_min_n,
                                 options.test_max_n, rng);
  return split;
}

Dataset MakeDataset(const std::string& spec, std::uint64_t seed) {
  Dataset d;
  d.name = spec;
  if (spec == "csl") {
    d.graphs = MakeCsl(seed);
  } else if (spec == "srg-pair") {
    d.pairs = MakeSrgPair();
  } else if (spec == "wl1-pairs") {
    d.pairs = MakeWl1Pairs();
  } else if (spec.rfind("sr25-file:", 0) == 0) {
    d.pairs = ReadPairFile(spec.substr(10));
  } else if (spec == "triangles-small") {
    TrianglesSplit split = MakeTrianglesSmall(seed);
    d.graphs = std::move(split.train);
    d.test = std::move(split.test);
  } else {
    throw ArgumentError("unknown dataset " + spec);
  }
  return d;
}

}  // namespace pfgnn
