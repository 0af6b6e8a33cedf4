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

#ifndef PFGNN_HASH_MODE_H_
#define PFGNN_HASH_MODE_H_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "pfgnn/coloring.h"
#include "pfgnn/graph.h"
#include "pfgnn/ir_search.h"
#include "pfgnn/particle_filter.h"

namespace pfgnn {

enum class HashObservation {
  kUniform,      // constant 1
  kCellEntropy,  // exp(entropy of cell sizes): favors finer partitions
};

// Discrete-coloring particle hooks: uniform choice over the target cell,
// exact individualization, 1-WL refinement.
class HashHooks {
 public:
  explicit HashHooks(const Graph& g,
                     HashObservation observation = HashObservation::kUniform)
      : g_(&g), observation_(observation) {}

  // Returns vertex -1 once the coloring is discrete.
  std::pair<int, double> SelectVertex(const Coloring& pi, std::mt19937_64& rng);
  Coloring Individualize(const Coloring& pi, int v);
  Coloring Refine(const Coloring& pi, int step);
  double Observe(const Coloring& pi);

 private:
  const Graph* g_;
  HashObservation observation_;
};

// Certificates along one path: entry 0 is the refined root, entry t the
// coloring after t individualizations.
std::vector<Digest> PathCertificates(const Graph& g, const std::vector<int>& path);

// True iff some path of g's search tree has exactly this certificate
// sequence. Explores only children whose certificate matches the next entry.
bool PathIsProducible(const Graph& g, const std::vector<Digest>& certs,
                      std::int64_t node_budget = kDefaultNodeBudget);

struct HashRun {
  std::vector<std::vector<int>> paths;
  std::vector<std::vector<Digest>> certificates;  // per final particle
  std::vector<double> weights;
};

// Hash-mode chain on g. Particles whose coloring turns discrete before T
// steps stop moving.
HashRun RunHashChain(const Graph& g, const PfConfig& cfg,
                     HashObservation observation = HashObservation::kUniform);

struct HashVerdict {
  bool distinguished = false;
  int witness_graph = -1;     // 0 or 1: whose certificate path was foreign
  int witness_particle = -1;
};

// Runs both chains with the same seed. The graphs are declared different iff
// a sampled certificate path of one is not producible in the other's search
// tree. Isomorphic graphs are never declared different.
HashVerdict CompareByHash(const Graph& g1, const Graph& g2, const PfConfig& cfg,
                          HashObservation observation = HashObservation::kUniform);

}  // namespace pfgnn

#endif  // PFGNN_HASH_MODE_H_
