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

#ifndef PFGNN_DATASETS_H_
#define PFGNN_DATASETS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfgnn/graph.h"

namespace pfgnn {

struct LabeledGraph {
  Graph graph;
  int label = 0;
};

struct GraphPair {
  std::string name;
  Graph first;
  Graph second;
  std::optional<bool> isomorphic;  // unknown for ad-hoc pairs
};

// 15 seeded random relabelings of each circulant class representative,
// class-major order. Labels are class indices 0..9.
std::vector<LabeledGraph> MakeCsl(std::uint64_t seed);

// Rook's 4x4 graph against the Shrikhande graph.
std::vector<GraphPair> MakeSrgPair();

// Non-isomorphic pairs with equal 1-WL colorings.
std::vector<GraphPair> MakeWl1Pairs();

// Every unordered pair of graphs in a graph6 file. Throws ArgumentError if
// the file is missing.
std::vector<GraphPair> ReadPairFile(const std::string& path);

// Each graph paired with a seeded relabeling of itself.
std::vector<GraphPair> MakeIsomorphicControls(int count, int min_n, int max_n,
                                              std::uint64_t seed);

std::int64_t CountTriangles(const Graph& g);

struct TrianglesOptions {
  int train_size = 300;
  int test_size = 100;
  int train_min_n = 6;
  int train_max_n = 10;
  int test_min_n = 10;
  int test_max_n = 14;
};

struct TrianglesSplit {
  std::vector<LabeledGraph> train;
  std::vector<LabeledGraph> test;
};

// Erdos-Renyi graphs labeled by triangle count, classes 0..9, balanced by
// rejection. The test split uses larger graphs.
TrianglesSplit MakeTrianglesSmall(std::uint64_t seed,
                                  const TrianglesOptions& options = {});

// Dataset names accepted by MakeDataset and the CLI: "csl", "srg-pair",
// "wl1-pairs", "sr25-file:<path>", "triangles-small".
struct Dataset {
  std::string name;
  std::vector<LabeledGraph> graphs;  // classification sets
  std::vector<GraphPair> pairs;      // pair sets
  std::vector<LabeledGraph> test;    // held-out split, if any
};

Dataset MakeDataset(const std::string& spec, std::uint64_t seed);

}  // namespace pfgnn

#endif  // PFGNN_DATASETS_H_
