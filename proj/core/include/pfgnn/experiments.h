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

#ifndef PFGNN_EXPERIMENTS_H_
#define PFGNN_EXPERIMENTS_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "pfgnn/datasets.h"
#include "pfgnn/model.h"
#include "pfgnn/particle_filter.h"
#include "pfgnn/report.h"
#include "pfgnn/training.h"

namespace pfgnn {

struct CslOptions {
  int folds = 5;
  double target_accuracy = 0.99;
  // The backbone-only control never leaves chance on this dataset, so it
  // gets a short schedule.
  int control_epochs = 50;
  double control_max_accuracy = 0.15;
  bool verify_dataset = true;
};

struct IsoOptions {
  std::string mode = "exact";  // exact | pf-hash
  int trials = 100;            // seeded pf-hash runs per pair
  int controls = 0;            // isomorphic control pairs (pf-hash)
  int control_min_n = 3;
  int control_max_n = 8;
  double min_distinguished_fraction = 1.0;
};

struct VarianceOptions {
  std::string graph = "erdos_renyi(12,0.35,3)";
  int hidden_dim = 16;
  int steps = 2;
  std::vector<int> particle_counts = {1, 4, 16, 64};
  int trials = 200;
  int reference_particles = 10000;
  double slope_min = -0.6;
  double slope_max = -0.4;
  double r2_min = 0.9;
  // Sample-size bound parameters.
  double bound_m = 1.0;
  int bound_d = 16;
  double bound_delta = 0.05;
  double bound_epsilon = 0.1;
};

struct RuntimeOptions {
  int graphs = 60;
  int hidden_dim = 32;
  std::vector<int> step_counts = {0, 1, 2, 3, 4, 8};
  std::vector<int> particle_counts = {1, 2, 4, 8};
  int fixed_particles = 4;
  int fixed_steps = 2;
  int epochs = 4;  // the first is discarded
  double r2_min = 0.95;
  double extrapolation_factor = 2.0;
  double parallel_min_speedup = 1.2;
};

struct AblationOptions {
  std::vector<std::uint64_t> seeds = {0, 1, 2};
  TrianglesOptions data;
  // Extra (T, K) settings trained with the full method.
  std::vector<std::pair<int, int>> grid;
};

// Everything a run depends on besides the code version. Parsed from JSON;
// unknown keys are rejected.
struct ExperimentConfig {
  std::string task = "train-csl";
  std::string dataset = "csl";
  std::uint64_t seed = 0;
  PfConfig pf;
  ModelConfig model;  // steps, classes and attribute count are filled per task
  TrainOptions train;
  CslOptions csl;
  IsoOptions iso;
  VarianceOptions variance;
  RuntimeOptions runtime;
  AblationOptions ablation;
  std::string out_dir;

  std::string ToJson() const;
  static ExperimentConfig FromJson(const std::string& text);
  static ExperimentConfig FromFile(const std::filesystem::path& path);
};

// Progress lines (one per epoch or trial batch); may be null.
using ProgressLog = std::function<void(const std::string&)>;

// ceil(8 M^2 ln(4 D / delta) / epsilon^2).
std::int64_t SamplePathBound(double m, int d, double delta, double epsilon);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
// Least squares; throws ArgumentError with fewer than two points.
LineFit FitLine(const std::vector<double>& x, const std::vector<double>& y);

// Pair verdicts for cfg.iso.mode over the given pairs.
RunReport RunIsoExperiment(const ExperimentConfig& cfg, const std::vector<GraphPair>& pairs,
                           const ProgressLog& log = nullptr);

struct CslRun {
  RunReport report;
  ParamStore params;  // model of the last fold
};
// Stratified k-fold training on CSL plus the T = 0 control.
CslRun TrainCsl(const ExperimentConfig& cfg, const ProgressLog& log = nullptr);

RunReport VarianceStudy(const ExperimentConfig& cfg, const ProgressLog& log = nullptr);
RunReport RuntimeStudy(const ExperimentConfig& cfg, const ProgressLog& log = nullptr);
RunReport Ablation(const ExperimentConfig& cfg, const ProgressLog& log = nullptr);

// Accuracy of a stored model on a classification dataset.
RunReport EvaluateModel(const ExperimentConfig& cfg, const PfGnnModel& model,
                        const ProgressLog& log = nullptr);

// Belief snapshots as JSON: one entry per step with weights, paths and a
// digest of every particle state.
std::string TraceHashChain(const Graph& g, const PfConfig& cfg);
std::string TraceNeuralChain(const PfGnnModel& model, const Graph& g, const PfConfig& cfg);

}  // namespace pfgnn

#endif  // PFGNN_EXPERIMENTS_H_
