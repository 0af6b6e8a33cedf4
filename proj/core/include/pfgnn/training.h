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

#ifndef PFGNN_TRAINING_H_
#define PFGNN_TRAINING_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pfgnn/datasets.h"
#include "pfgnn/model.h"
#include "pfgnn/nn.h"
#include "pfgnn/particle_filter.h"

namespace pfgnn {

struct TrainOptions {
  int epochs = 500;
  int batch_size = 16;
  double lr = 1e-3;
  double gamma = 1.0;  // policy-loss weight
  int scheduler_patience = 20;
  double scheduler_factor = 0.5;
  // Stop once the training pass has been fully correct for this many
  // consecutive epochs. 0 disables early stopping.
  int stop_after_perfect_epochs = 0;

  void Validate() const;
};

struct EpochMetrics {
  int epoch = 0;
  double loss = 0.0;       // mean total objective
  double task_loss = 0.0;  // mean cross-entropy
  double train_accuracy = 0.0;
  double lr = 0.0;
  double policy_grad_max = 0.0;  // largest |grad| over policy parameters
  double seconds = 0.0;
};

struct TrainResult {
  std::vector<EpochMetrics> epochs;
  double test_accuracy = 0.0;
  double policy_grad_max = 0.0;
  ParamStore params;
};

// Independent 64-bit seed for (seed, a, b, purpose).
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                         std::uint64_t purpose);

// Fraction of graphs whose arg-max logit equals the label. Each graph gets
// its own chain seed derived from `seed` and its index.
double Evaluate(const PfGnnModel& model, std::span<const LabeledGraph> graphs,
                const PfConfig& cfg, std::uint64_t seed);

// Mini-batch Adam on the summed objective; per-graph gradients are computed
// in parallel and averaged in index order. The chain seed of every graph is
// derived from (seed, epoch, index). Throws NumericalError (with the epoch in
// the message) if the loss diverges.
TrainResult TrainClassifier(
    const ModelConfig& model_config, const PfConfig& pf, const TrainOptions& options,
    std::span<const LabeledGraph> train, std::span<const LabeledGraph> test,
    std::uint64_t seed,
    const std::function<void(const EpochMetrics&)>& on_epoch = nullptr);

}  // namespace pfgnn

#endif  // PFGNN_TRAINING_H_
