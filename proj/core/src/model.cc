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

#include "pfgnn/model.h"

#include <cmath>
#include <string>

#include "json.hpp"
#include "pfgnn/errors.h"

namespace pfgnn {

void ModelConfig::Validate() const {
  if (num_attribute_values < 0) throw ArgumentError("num_attribute_values < 0");
  if (hidden_dim < 1) throw ArgumentError("hidden_dim must be positive");
  if (num_classes < 1) throw ArgumentError("num_classes must be positive");
  if (steps < 0) throw ArgumentError("steps must be non-negative");
  if (initial_layers < 1) throw ArgumentError("initial_layers must be at least 1");
  if (layers_per_step < 1) throw ArgumentError("layers_per_step must be at least 1");
}

std::string ModelConfig::ToJson() const {
  nlohmann::json j = {{"num_attribute_values", num_attribute_values},
                      {"hidden_dim", hidden_dim},
                      {"num_classes", num_classes},
                      {"steps", steps},
                      {"initial_layers", initial_layers},
                      {"layers_per_step", layers_per_step},
                      {"policy", policy == PolicyKind::kGnn ? "gnn" : "mlp"},
                      {"policy_backbone_gradient", policy_backbone_gradient}};
  return j.dump();
}

ModelConfig ModelConfig::FromJson(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("model config: ") + e.what(), e.byte);
  }
  ModelConfig c;
  c.num_attribute_values = j.value("num_attribute_values", c.num_attribute_values);
  c.hidden_dim = j.value("hidden_dim", c.hidden_dim);
  c.num_classes = j.value("num_classes", c.num_classes);
  c.steps = j.value("steps", c.steps);
  c.initial_layers = j.value("initial_layers", c.initial_layers);
  c.layers_per_step = j.value("layers_per_step", c.layers_per_step);
  c.policy_backbone_gradient =
      j.value("policy_backbone_gradient", c.policy_backbone_gradient);
  const std::string policy = j.value("policy", std::string("mlp"));
  if (policy == "gnn") {
    c.policy = PolicyKind::kGnn;
  } else if (policy != "mlp") {
    throw ArgumentError("unknown policy kind " + policy);
  }
  c.Validate();
  return c;
}

PfGnnModel::PfGnnModel(const ModelConfig& config, std::uint64_t init_seed)
    : config_(config) {
  config_.Validate();
  std::mt19937_64 rng(init_seed);
  Build(rng);
}

PfGnnModel::PfGnnModel(const ModelConfig& config, ParamStore params)
    : config_(config) {
  config_.Validate();
  std::mt19937_64 rng(0);
  Build(rng);
  if (params.size() != params_.size()) {
    throw ArgumentError("parameter count does not match the model config");
  }
  for (int i = 0; i < params_.size(); ++i) {
    if (params.name(i) != params_.name(i) ||
        params.value(i).rows() != params_.value(i).rows() ||
        params.value(i).cols() != params_.value(i).cols()) {
      throw ArgumentError("parameter " + params.name(i) + " does not match");
    }
  }
  params_ = std::move(params);
}

void PfGnnModel::Build(std::mt19937_64& rng) {
  const int d = config_.hidden_dim;
  for (int l = 0; l < config_.initial_layers; ++l) {
    initial_.push_back(AddGin(params_, "init." + std::to_string(l),
                              l == 0 ? config_.input_dim() : d, d, rng));
  }
  for (int t = 1; t <= config_.steps; ++t) {
    std::vector<GinRef> layers;
    for (int l = 0; l < config_.layers_per_step; ++l) {
      layers.push_back(AddGin(
          params_, "step" + std::to_string(t) + "." + std::to_string(l), d, d, rng));
    }
    step_layers_.push_back(std::move(layers));
  }
  if (config_.policy == PolicyKind::kGnn) {
    policy_gin_ = AddGin(params_, "policy.gin", d, d, rng);
  }
  policy_ = AddMlp(params_, "policy.mlp", d, d, 1, rng);
  transform_ = AddMlp(params_, "trans", d, d, d, rng);
  observation_ = AddMlp(params_, "obs", d, d, 1, rng);
  readout_ = AddMlp(params_, "readout", (config_.steps + 1) * d, d,
                    config_.num_classes, rng);
}

std::vector<int> PfGnnModel::PolicyParamIndices() const {
  std::vector<int> out;
  for (int i = 0; i < params_.size(); ++i) {
    if (params_.name(i).rfind("policy.", 0) == 0) out.push_back(i);
  }
  return out;
}

Tensor PfGnnModel::InputFeatures(const Graph& g) const {
  Tensor x = Tensor::Zero(g.num_vertices(), config_.input_dim());
  x.col(0).setOnes();
  if (config_.num_attribute_values > 0) {
    if (!g.node_attrs()) throw ArgumentError("model expects node attributes");
    const auto& attrs = *g.node_attrs();
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (attrs[v] < 0 || attrs[v] >= config_.num_attribute_values) {
        throw ArgumentError("attribute " + std::to_string(attrs[v]) +
                            " outside the model's range");
      }
      x(v, 1 + attrs[v]) = 1.0;
    }
  }
  return x;
}

Var PfGnnModel::Block(const BoundParams& p, const GinRef& ref, const Graph& g,
                      const Var& h) const {
  return MpLayer(p, ref, g, h);
}

Var PfGnnModel::Embed(const BoundParams& p, const Graph& g) const {
  Var h(InputFeatures(g));
  for (const auto& layer : initial_) h = Block(p, layer, g, h);
  return h;
}

Var PfGnnModel::RefineStep(const BoundParams& p, const Graph& g, const Var& h,
                           int step) const {
  if (step < 1 || step > config_.steps) {
    throw ArgumentError("no GNN block for step " + std::to_string(step));
  }
  Var out = h;
  for (const auto& layer : step_layers_[step - 1]) out = Block(p, layer, g, out);
  return out;
}

Var PfGnnModel::PolicyLogProbs(const BoundParams& p, const Graph& g,
                               const Var& h) const {
  Var features = config_.policy_backbone_gradient ? h : StopGradient(h);
  if (config_.policy == PolicyKind::kGnn) {
    features = Block(p, policy_gin_, g, h);
  }
  return LogSoftmaxColumn(ApplyMlp(p, policy_, features));
}

Var PfGnnModel::TransformRow(const BoundParams& p, const Var& row) const {
  return ApplyMlp(p, transform_, row);
}

Var PfGnnModel::IndividualizeEmbedding(const BoundParams& p, const Var& h,
                                       int v) const {
  if (v < 0 || v >= h.rows()) {
    throw ArgumentError("vertex " + std::to_string(v) + " out of range");
  }
  Var row = Row(h, v);
  return ReplaceRow(h, v, row * TransformRow(p, row));
}

Var PfGnnModel::Observe(const BoundParams& p, const Var& h) const {
  return Softplus(ApplyMlp(p, observation_, SumRows(h)));
}

Var PfGnnModel::Readout(const BoundParams& p,
                        std::span<const Var> mean_states) const {
  if (static_cast<int>(mean_states.size()) != config_.steps + 1) {
    throw ArgumentError("readout expects " + std::to_string(config_.steps + 1) +
                        " mean states, got " + std::to_string(mean_states.size()));
  }
  std::vector<Var> pooled;
  for (const auto& m : mean_states) {
    if (m.cols() != config_.hidden_dim) {
      throw ArgumentError("mean state width does not match hidden_dim");
    }
    pooled.push_back(SumRows(m));
  }
  return ApplyMlp(p, readout_, ConcatCols(pooled));
}

std::pair<int, Var> NeuralHooks::SelectVertex(const Var& h, std::mt19937_64& rng) {
  Var log_probs = model_->PolicyLogProbs(*params_, *g_, h);
  const Tensor& lp = log_probs.value();
  if (!lp.allFinite()) throw NumericalError("policy produced non-finite scores");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  double running = 0.0;
  int v = static_cast<int>(lp.rows()) - 1;
  for (int i = 0; i < lp.rows(); ++i) {
    running += std::exp(lp(i, 0));
    if (u < running) {
      v = i;
      break;
    }
  }
  return {v, Element(log_probs, v, 0)};
}

Var NeuralHooks::Individualize(const Var& h, int v) {
  return model_->IndividualizeEmbedding(*params_, h, v);
}

Var NeuralHooks::Refine(const Var& h, int step) {
  return model_->RefineStep(*params_, *g_, h, step);
}

Var NeuralHooks::Observe(const Var& h) { return model_->Observe(*params_, h); }

ChainForward Forward(const PfGnnModel& model, const BoundParams& params,
                     const Graph& g, const PfConfig& cfg) {
  if (cfg.steps != model.config().steps) {
    throw ArgumentError("chain has " + std::to_string(cfg.steps) +
                        " steps but the model was built for " +
                        std::to_string(model.config().steps));
  }
  NeuralHooks hooks(model, params, g);
  auto chain = RunChain<Var, Var>(model.Embed(params, g), cfg, hooks);
  ChainForward out;
  out.logits = model.Readout(params, chain.mean_states);
  out.log_probs = std::move(chain.log_probs);
  out.paths = chain.belief.paths;
  out.weights = chain.belief.WeightValues();
  out.mean_states = std::move(chain.mean_states);
  return out;
}

Var CrossEntropy(const Var& logits, int label) {
  if (label < 0 || label >= logits.cols()) {
    throw ArgumentError("label " + std::to_string(label) + " out of range");
  }
  const double shift = logits.value().maxCoeff();
  Var shifted = logits - Var(shift);
  return Log(Sum(Exp(shifted))) - Element(shifted, 0, label);
}

Var ReinforceSurrogate(double task_loss, std::span<const Var> log_probs,
                       double gamma) {
  Var total(0.0);
  if (gamma == 0.0) return total;
  for (const auto& lp : log_probs) total = total + lp;
  return total * Var(gamma * task_loss);
}

namespace {

Var Objective(const PfGnnModel& model, const BoundParams& params, const Graph& g,
              int label, const PfConfig& cfg, double gamma,
              std::optional<double> frozen, ChainForward* forward_out,
              double* task_out) {
  ChainForward fwd = Forward(model, params, g, cfg);
  Var task = CrossEntropy(fwd.logits, label);
  const double coefficient = frozen ? *frozen : task.item();
  Var total = task + ReinforceSurrogate(coefficient, fwd.log_probs, gamma);
  if (!std::isfinite(total.item())) {
    throw NumericalError("non-finite loss (task loss " + std::to_string(task.item()) +
                         ")");
  }
  if (task_out) *task_out = task.item();
  if (forward_out) *forward_out = std::move(fwd);
  return total;
}

}  // namespace

LossAndGrad ComputeLossAndGrad(const PfGnnModel& model, const Graph& g, int label,
                               const PfConfig& cfg, double gamma) {
  BoundParams params(model.params());
  ChainForward fwd;
  LossAndGrad out;
  Var total = Objective(model, params, g, label, cfg, gamma, std::nullopt, &fwd,
                        &out.task_loss);
  Backward(total);
  out.loss = total.item();
  out.grads = params.Grads();
  out.logits = fwd.logits.value();
  out.paths = std::move(fwd.paths);
  return out;
}

double ComputeLoss(const PfGnnModel& model, const Graph& g, int label,
                   const PfConfig& cfg, double gamma,
                   std::optional<double> frozen_task_loss) {
  BoundParams params(model.params(), /*requires_grad=*/false);
  return Objective(model, params, g, label, cfg, gamma, frozen_task_loss, nullptr,
                   nullptr)
      .item();
}

Tensor Predict(const PfGnnModel& model, const Graph& g, const PfConfig& cfg) {
  BoundParams params(model.params(), /*requires_grad=*/false);
  return Forward(model, params, g, cfg).logits.value();
}

}  // namespace pfgnn
