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

#include <benchmark/benchmark.h>

#include <random>

#include "pfgnn/coloring.h"
#include "pfgnn/generators.h"
#include "pfgnn/hash_mode.h"
#include "pfgnn/ir_search.h"
#include "pfgnn/model.h"

namespace pfgnn {
namespace {

Graph Circulant(int n) { return Generate({gen::Circulant{n, 3}}); }

void BM_RefineAfterIndividualize(benchmark::State& state) {
  const Graph g = Circulant(static_cast<int>(state.range(0)));
  const Coloring root = Refine(g, Coloring::Initial(g));
  for (auto _ : state) {
    benchmark::DoNotOptimize(IndividualizeRefine(g, root, 0));
  }
}
BENCHMARK(BM_RefineAfterIndividualize)->Arg(41)->Arg(161)->Arg(641);

void BM_CanonicalForm(benchmark::State& state) {
  const Graph g = Generate({gen::ErdosRenyi{static_cast<int>(state.range(0)), 0.3, 7}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeCanonicalForm(g));
  }
}
BENCHMARK(BM_CanonicalForm)->Arg(8)->Arg(12)->Arg(16);

void BM_CanonicalFormSrg(benchmark::State& state) {
  const Graph g = Generate({gen::Shrikhande{}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeCanonicalForm(g));
  }
}
BENCHMARK(BM_CanonicalFormSrg);

void BM_HashChain(benchmark::State& state) {
  const Graph g = Generate({gen::Rook4x4{}});
  PfConfig cfg;
  cfg.num_particles = static_cast<int>(state.range(0));
  cfg.steps = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunHashChain(g, cfg));
    ++cfg.seed;
  }
}
BENCHMARK(BM_HashChain)->Arg(4)->Arg(16);

void BM_NeuralLossAndGrad(benchmark::State& state) {
  ModelConfig mc;
  mc.hidden_dim = static_cast<int>(state.range(0));
  mc.steps = 3;
  const PfGnnModel model(mc, 1);
  const Graph g = Circulant(41);
  PfConfig cfg;
  cfg.num_particles = 8;
  cfg.steps = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeLossAndGrad(model, g, 0, cfg, 1.0));
    ++cfg.seed;
  }
}
BENCHMARK(BM_NeuralLossAndGrad)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_NeuralPredict(benchmark::State& state) {
  ModelConfig mc;
  mc.steps = 3;
  const PfGnnModel model(mc, 1);
  const Graph g = Circulant(41);
  PfConfig cfg;
  cfg.num_particles = static_cast<int>(state.range(0));
  cfg.steps = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Predict(model, g, cfg));
    ++cfg.seed;
  }
}
BENCHMARK(BM_NeuralPredict)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace pfgnn

BENCHMARK_MAIN();
