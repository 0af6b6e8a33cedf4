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

#include "pfgnn/hash_mode.h"

#include <cmath>
#include <functional>

#include "pfgnn/errors.h"

namespace pfgnn {

std::pair<int, double> HashHooks::SelectVertex(const Coloring& pi,
                                               std::mt19937_64& rng) {
  if (pi.IsDiscrete()) return {-1, 0.0};
  const auto cell = pi.cell(TargetCell(pi));
  std::uniform_int_distribution<int> pick(0, static_cast<int>(cell.size()) - 1);
  return {cell[pick(rng)], -std::log(static_cast<double>(cell.size()))};
}

Coloring HashHooks::Individualize(const Coloring& pi, int v) {
  return pfgnn::Individualize(pi, v);
}

Coloring HashHooks::Refine(const Coloring& pi, int /*step*/) {
  return pfgnn::Refine(*g_, pi);
}

double HashHooks::Observe(const Coloring& pi) {
  if (observation_ == HashObservation::kUniform) return 1.0;
  const double n = pi.num_vertices();
  double entropy = 0.0;
  for (const auto& cell : pi.cells()) {
    const double p = cell.size() / n;
    entropy -= p * std::log(p);
  }
  return std::exp(entropy);
}

std::vector<Digest> PathCertificates(const Graph& g, const std::vector<int>& path) {
  Coloring pi = Refine(g, Coloring::Initial(g));
  std::vector<Digest> certs = {Certificate(g, pi)};
  for (int v : path) {
    pi = IndividualizeRefine(g, pi, v);
    certs.push_back(Certificate(g, pi));
  }
  return certs;
}

bool PathIsProducible(const Graph& g, const std::vector<Digest>& certs,
                      std::int64_t node_budget) {
  if (certs.empty()) return true;
  const Coloring root = Refine(g, Coloring::Initial(g));
  if (Certificate(g, root) != certs[0]) return false;
  std::int64_t nodes = 1;
  std::function<bool(const Coloring&, std::size_t)> match =
      [&](const Coloring& pi, std::size_t t) -> bool {
    if (t + 1 == certs.size()) return true;
    if (pi.IsDiscrete()) return false;
    for (int v : pi.cell(TargetCell(pi))) {
      if (++nodes > node_budget) {
        throw BudgetExceededError("path search exceeded node budget");
      }
      Coloring child = IndividualizeRefine(g, pi, v);
      if (Certificate(g, child) == certs[t + 1] && match(child, t + 1)) {
        return true;
      }
    }
    return false;
  };
  return match(root, 0);
}

HashRun RunHashChain(const Graph& g, const PfConfig& cfg,
                     HashObservation observation) {
  HashHooks hooks(g, observation);
  const Coloring root = Refine(g, Coloring::Initial(g));
  auto chain = RunChain<Coloring, double>(root, cfg, hooks);
  HashRun run;
  run.paths = chain.belief.paths;
  run.weights = chain.belief.WeightValues();
  for (const auto& path : run.paths) {
    run.certificates.push_back(PathCertificates(g, path));
  }
  return run;
}

HashVerdict CompareByHash(const Graph& g1, const Graph& g2, const PfConfig& cfg,
                          HashObservation observation) {
  HashVerdict verdict;
  if (g1.num_vertices() != g2.num_vertices() ||
      g1.num_edges() != g2.num_edges()) {
    verdict.distinguished = true;
    return verdict;
  }
  const Graph* graphs[2] = {&g1, &g2};
  for (int side = 0; side < 2; ++side) {
    const HashRun run = RunHashChain(*graphs[side], cfg, observation);
    for (std::size_t k = 0; k < run.certificates.size(); ++k) {
      if (!PathIsProducible(*graphs[1 - side], run.certificates[k])) {
        verdict.distinguished = true;
        verdict.witness_graph = side;
        verdict.witness_particle = static_cast<int>(k);
        return verdict;
      }
    }
  }
  return verdict;
}

}  // namespace pfgnn
