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

#include "pfgnn/training.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "pfgnn/errors.h"
#include "pfgnn/parallel.h"

namespace pfgnn {
namespace {

enum SeedPurpose : std::uint64_t {
  kInitSeed = 11,
  kShuffleSeed = 12,
  kTrainChainSeed = 13,
  kEvalChainSeed = 14,
};

int ArgMax(const Tensor& logits) {
  Eigen::Index best = 0;
  logits.row(0).maxCoeff(&best);
  return static_cast<int>(best);
}

}  // namespace

void TrainOptions::Validate() const {
  if (epochs < 1) throw ArgumentError("epochs must be positive");
  if (batch_size < 1) throw ArgumentError("batch size must be positive");
  if (!(lr > 0.0)) throw ArgumentError("learning rate must be positive");
  if (!(gamma >= 0.0)) throw ArgumentError("gamma must be non-negative");
  if (scheduler_patience < 1) throw ArgumentError("scheduler patience must be positive");
  if (!(scheduler_factor > 0.0 && scheduler_factor < 1.0)) {
    throw ArgumentError("scheduler factor must lie in (0, 1)");
  }
  if (stop_after_perfect_epochs < 0) {
    throw ArgumentError("stop_after_perfect_epochs must be non-negative");
  }
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                         std::uint64_t purpose) {
  return StreamRng(seed, a, b, purpose)();
}

double Evaluate(const PfGnnModel& model, std::span<const LabeledGraph> graphs,
                const PfConfig& cfg, std::uint64_t seed) {
  if (graphs.empty()) return 0.0;
  std::vector<char> correct(graphs.size(), 0);
  ParallelFor(static_cast<int>(graphs.size()), [&](int i) {
    PfConfig c = cfg;
    c.seed = DeriveSeed(seed, 0, i, kEvalChainSeed);
    correct[i] = ArgMax(Predict(model, graphs[i].graph, c)) == graphs[i].label;
  });
  return static_cast<double>(std::count(correct.begin(), correct.end(), 1)) /
         static_cast<double>(graphs.size());
}

TrainResult TrainClassifier(const ModelConfig& model_config, const PfConfig& pf,
                            const TrainOptions& options,
                            std::span<const LabeledGraph> train,
                            std::span<const LabeledGraph> test, std::uint64_t seed,
                            const std::function<void(const EpochMetrics&)>& on_epoch) {
  options.Validate();
  pf.Validate();
  if (train.empty()) throw ArgumentError("empty training set");
  PfGnnModel model(model_config, DeriveSeed(seed, 0, 0, kInitSeed));
  ParamStore& store = model.params();
  Adam adam(store);
  PlateauScheduler scheduler(options.lr, /*maximize=*/false, options.scheduler_patience,
                             options.scheduler_factor);
  const std::vector<int> policy = model.PolicyParamIndices();

  TrainResult result;
  std::vector<int> order(train.size());
  int perfect_streak = 0;
  double lr = options.lr;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 shuffle_rng(DeriveSeed(seed, epoch, 0, kShuffleSeed));
    std::shuffle(order.begin(), order.end(), shuffle_rng);

    EpochMetrics m;
    m.epoch = epoch;
    m.lr = lr;
    int correct = 0;
    for (std::size_t begin = 0; begin < order.size();
         begin += static_cast<std::size_t>(options.batch_size)) {
      const int count = static_cast<int>(
          std::min(order.size() - begin, static_cast<std::size_t>(options.batch_size)));
      std::vector<LossAndGrad> parts(count);
      ParallelFor(count, [&](int j) {
        const int idx = order[begin + j];
        PfConfig c = pf;
        c.seed = DeriveSeed(seed, epoch, idx, kTrainChainSeed);
        parts[j] = ComputeLossAndGrad(model, train[idx].graph, train[idx].label, c,
                                      options.gamma);
      });
      std::vector<Tensor> grads = store.ZerosLike();
      for (int j = 0; j < count; ++j) {
        for (int p = 0; p < store.size(); ++p) grads[p] += parts[j].grads[p];
        m.loss += parts[j].loss;
        m.task_loss += parts[j].task_loss;
        if (ArgMax(parts[j].logits) == train[order[begin + j]].label) ++correct;
      }
      for (auto& g : grads) g /= static_cast<double>(count);
      for (int p : policy) {
        m.policy_grad_max = std::max(m.policy_grad_max, grads[p].cwiseAbs().maxCoeff());
      }
      if (!std::isfinite(m.loss)) {
        throw NumericalError("training diverged in epoch " + std::to_string(epoch));
      }
      adam.Step(store, grads, lr);
    }
    const double n = static_cast<double>(train.size());
    m.loss /= n;
    m.task_loss /= n;
    m.train_accuracy = correct / n;
    m.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
    result.policy_grad_max = std::max(result.policy_grad_max, m.policy_grad_max);
    result.epochs.push_back(m);
    if (on_epoch) on_epoch(m);
    lr = scheduler.Update(m.task_loss);

    perfect_streak = m.train_accuracy == 1.0 ? perfect_streak + 1 : 0;
    if (options.stop_after_perfect_epochs > 0 &&
        perfect_streak >= options.stop_after_perfect_epochs) {
      break;
    }
  }
  result.test_accuracy = Evaluate(model, test, pf, seed);
  result.params = store;
  return result;
}

}  // namespace pfgnn
