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

#ifndef PFGNN_MODEL_H_
#define PFGNN_MODEL_H_

// Neural particle-filter GNN: GIN refinement, a learned vertex policy,
// multiplicative individualization, a positive observation score and a
// readout over the per-step mean embeddings.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pfgnn/autodiff.h"
#include "pfgnn/graph.h"
#include "pfgnn/nn.h"
#include "pfgnn/particle_filter.h"

namespace pfgnn {

enum class PolicyKind { kMlp, kGnn };

struct ModelConfig {
  // Attributes become a one-hot block next to a constant-one column, so
  // attribute values must lie in [0, num_attribute_values).
  int num_attribute_values = 0;
  int hidden_dim = 64;
  int num_classes = 10;
  int steps = 3;  // T
  int initial_layers = 2;
  int layers_per_step = 2;
  PolicyKind policy = PolicyKind::kMlp;
  // When false the policy reads the embeddings through a stop-gradient, so
  // the score-function term only updates policy parameters.
  bool policy_backbone_gradient = false;

  int input_dim() const { return 1 + num_attribute_values; }
  void Validate() const;
  std::string ToJson() const;
  static ModelConfig FromJson(const std::string& text);
};

class PfGnnModel {
 public:
  PfGnnModel(const ModelConfig& config, std::uint64_t init_seed);
  // Adopts parameters, e.g. from a checkpoint; names and shapes must match a
  // freshly built model with the same config.
  PfGnnModel(const ModelConfig& config, ParamStore params);

  const ModelConfig& config() const { return config_; }
  ParamStore& params() { return params_; }
  const ParamStore& params() const { return params_; }
  // Indices of the vertex-policy parameters.
  std::vector<int> PolicyParamIndices() const;

  Tensor InputFeatures(const Graph& g) const;
  // Initial embedding H_1 (n x d) from the input features.
  Var Embed(const BoundParams& p, const Graph& g) const;
  // GNN block of IR step `step` (1-based).
  Var RefineStep(const BoundParams& p, const Graph& g, const Var& h, int step) const;
  // n x 1 log-probabilities of individualizing each vertex.
  Var PolicyLogProbs(const BoundParams& p, const Graph& g, const Var& h) const;
  // Row v becomes h_v * MLP_trans(h_v); other rows are copied unchanged.
  Var IndividualizeEmbedding(const BoundParams& p, const Var& h, int v) const;
  Var TransformRow(const BoundParams& p, const Var& row) const;
  // softplus(MLP(sum of rows)), 1 x 1 and positive.
  Var Observe(const BoundParams& p, const Var& h) const;
  // Sum-pools each mean state, concatenates, applies the final MLP.
  Var Readout(const BoundParams& p, std::span<const Var> mean_states) const;

  const GinRef& input_layer(int i) const { return initial_[i]; }
  const MlpRef& transform_ref() const { return transform_; }
  const MlpRef& observation_ref() const { return observation_; }
  const MlpRef& policy_ref() const { return policy_; }
  const MlpRef& readout_ref() const { return readout_; }
  const GinRef& step_layer(int step, int layer) const {
    return step_layers_[step - 1][layer];
  }

 private:
  void Build(std::mt19937_64& rng);
  Var Block(const BoundParams& p, const GinRef& ref, const Graph& g,
            const Var& h) const;

  ModelConfig config_;
  ParamStore params_;
  std::vector<GinRef> initial_;
  std::vector<std::vector<GinRef>> step_layers_;
  GinRef policy_gin_;
  MlpRef policy_;
  MlpRef transform_;
  MlpRef observation_;
  MlpRef readout_;
};

// Chain hooks for neural mode: the policy samples any vertex.
class NeuralHooks {
 public:
  NeuralHooks(const PfGnnModel& model, const BoundParams& params, const Graph& g)
      : model_(&model), params_(&params), g_(&g) {}

  std::pair<int, Var> SelectVertex(const Var& h, std::mt19937_64& rng);
  Var Individualize(const Var& h, int v);
  Var Refine(const Var& h, int step);
  Var Observe(const Var& h);

 private:
  const PfGnnModel* model_;
  const BoundParams* params_;
  const Graph* g_;
};

struct ChainForward {
  Var logits;                  // 1 x num_classes
  std::vector<Var> log_probs;  // per final particle, through resampling ancestry
  std::vector<std::vector<int>> paths;
  std::vector<double> weights;
  std::vector<Var> mean_states;
};

// Runs the particle chain on g. cfg.steps must equal the model's T.
ChainForward Forward(const PfGnnModel& model, const BoundParams& params,
                     const Graph& g, const PfConfig& cfg);

// -log softmax(logits)[label].
Var CrossEntropy(const Var& logits, int label);

// gamma * sum_k L * log P_k with L held constant.
Var ReinforceSurrogate(double task_loss, std::span<const Var> log_probs,
                       double gamma);

struct LossAndGrad {
  double loss = 0.0;       // task loss plus surrogate
  double task_loss = 0.0;
  std::vector<Tensor> grads;
  Tensor logits;
  std::vector<std::vector<int>> paths;
};

// Objective: CE(logits, label) + gamma * sum_k stopgrad(CE) * log P_k. Throws
// NumericalError on a non-finite loss.
LossAndGrad ComputeLossAndGrad(const PfGnnModel& model, const Graph& g, int label,
                               const PfConfig& cfg, double gamma);

// Objective value only. With `frozen_task_loss` set, the surrogate uses it as
// the constant coefficient, which makes the value's derivative equal the
// gradient returned by ComputeLossAndGrad at the point where it was frozen.
double ComputeLoss(const PfGnnModel& model, const Graph& g, int label,
                   const PfConfig& cfg, double gamma,
                   std::optional<double> frozen_task_loss = std::nullopt);

// Class logits without building a gradient tape.
Tensor Predict(const PfGnnModel& model, const Graph& g, const PfConfig& cfg);

}  // namespace pfgnn

#endif  // PFGNN_MODEL_H_
