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

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pfgnn/errors.h"
#include "pfgnn/experiments.h"

namespace pfgnn {
namespace {

using nlohmann::json;

void CheckKeys(const json& j, const std::string& where,
               const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ArgumentError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ArgumentError("unknown key " + where + "." + key);
  }
}

template <class T>
void Read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

json PfToJson(const PfConfig& pf) {
  return {{"K", pf.num_particles},
          {"T", pf.steps},
          {"alpha", pf.alpha},
          {"resample", pf.resample},
          {"reinforce_include_resampling", pf.reinforce_include_resampling},
          {"parallel_particles", pf.parallel_particles}};
}

void PfFromJson(const json& j, PfConfig& pf) {
  CheckKeys(j, "pf",
            {"K", "T", "alpha", "resample", "reinforce_include_resampling",
             "parallel_particles"});
  Read(j, "K", pf.num_particles);
  Read(j, "T", pf.steps);
  Read(j, "alpha", pf.alpha);
  Read(j, "resample", pf.resample);
  Read(j, "reinforce_include_resampling", pf.reinforce_include_resampling);
  Read(j, "parallel_particles", pf.parallel_particles);
}

json ModelToJson(const ModelConfig& m) {
  return {{"hidden_dim", m.hidden_dim},
          {"initial_layers", m.initial_layers},
          {"layers_per_step", m.layers_per_step},
          {"policy", m.policy == PolicyKind::kGnn ? "gnn" : "mlp"},
          {"policy_backbone_gradient", m.policy_backbone_gradient}};
}

void ModelFromJson(const json& j, ModelConfig& m) {
  CheckKeys(j, "model", {"hidden_dim", "initial_layers", "layers_per_step", "policy",
                         "policy_backbone_gradient"});
  Read(j, "hidden_dim", m.hidden_dim);
  Read(j, "policy_backbone_gradient", m.policy_backbone_gradient);
  Read(j, "initial_layers", m.initial_layers);
  Read(j, "layers_per_step", m.layers_per_step);
  if (j.contains("policy")) {
    const std::string p = j.at("policy").get<std::string>();
    if (p == "mlp") {
      m.policy = PolicyKind::kMlp;
    } else if (p == "gnn") {
      m.policy = PolicyKind::kGnn;
    } else {
      throw ArgumentError("unknown policy kind " + p);
    }
  }
}

json TrainToJson(const TrainOptions& t) {
  return {{"epochs", t.epochs},
          {"batch_size", t.batch_size},
          {"lr", t.lr},
          {"gamma", t.gamma},
          {"scheduler_patience", t.scheduler_patience},
          {"scheduler_factor", t.scheduler_factor},
          {"stop_after_perfect_epochs", t.stop_after_perfect_epochs}};
}

void TrainFromJson(const json& j, TrainOptions& t) {
  CheckKeys(j, "train",
            {"epochs", "batch_size", "lr", "gamma", "scheduler_patience",
             "scheduler_factor", "stop_after_perfect_epochs"});
  Read(j, "epochs", t.epochs);
  Read(j, "batch_size", t.batch_size);
  Read(j, "lr", t.lr);
  Read(j, "gamma", t.gamma);
  Read(j, "scheduler_patience", t.scheduler_patience);
  Read(j, "scheduler_factor", t.scheduler_factor);
  Read(j, "stop_after_perfect_epochs", t.stop_after_perfect_epochs);
}

json CslToJson(const CslOptions& c) {
  return {{"folds", c.folds},
          {"target_accuracy", c.target_accuracy},
          {"control_epochs", c.control_epochs},
          {"control_max_accuracy", c.control_max_accuracy},
          {"verify_dataset", c.verify_dataset}};
}

void CslFromJson(const json& j, CslOptions& c) {
  CheckKeys(j, "csl",
            {"folds", "target_accuracy", "control_epochs", "control_max_accuracy",
             "verify_dataset"});
  Read(j, "folds", c.folds);
  Read(j, "target_accuracy", c.target_accuracy);
  Read(j, "control_epochs", c.control_epochs);
  Read(j, "control_max_accuracy", c.control_max_accuracy);
  Read(j, "verify_dataset", c.verify_dataset);
}

json IsoToJson(const IsoOptions& o) {
  return {{"mode", o.mode},
          {"trials", o.trials},
          {"controls", o.controls},
          {"control_min_n", o.control_min_n},
          {"control_max_n", o.control_max_n},
          {"min_distinguished_fraction", o.min_distinguished_fraction}};
}

void IsoFromJson(const json& j, IsoOptions& o) {
  CheckKeys(j, "iso",
            {"mode", "trials", "controls", "control_min_n", "control_max_n",
             "min_distinguished_fraction"});
  Read(j, "mode", o.mode);
  Read(j, "trials", o.trials);
  Read(j, "controls", o.controls);
  Read(j, "control_min_n", o.control_min_n);
  Read(j, "control_max_n", o.control_max_n);
  Read(j, "min_distinguished_fraction", o.min_distinguished_fraction);
}

json VarianceToJson(const VarianceOptions& v) {
  return {{"graph", v.graph},
          {"hidden_dim", v.hidden_dim},
          {"T", v.steps},
          {"K", v.particle_counts},
          {"trials", v.trials},
          {"reference_particles", v.reference_particles},
          {"slope_min", v.slope_min},
          {"slope_max", v.slope_max},
          {"r2_min", v.r2_min},
          {"bound_M", v.bound_m},
          {"bound_D", v.bound_d},
          {"bound_delta", v.bound_delta},
          {"bound_epsilon", v.bound_epsilon}};
}

void VarianceFromJson(const json& j, VarianceOptions& v) {
  CheckKeys(j, "variance",
            {"graph", "hidden_dim", "T", "K", "trials", "reference_particles",
             "slope_min", "slope_max", "r2_min", "bound_M", "bound_D", "bound_delta",
             "bound_epsilon"});
  Read(j, "graph", v.graph);
  Read(j, "hidden_dim", v.hidden_dim);
  Read(j, "T", v.steps);
  Read(j, "K", v.particle_counts);
  Read(j, "trials", v.trials);
  Read(j, "reference_particles", v.reference_particles);
  Read(j, "slope_min", v.slope_min);
  Read(j, "slope_max", v.slope_max);
  Read(j, "r2_min", v.r2_min);
  Read(j, "bound_M", v.bound_m);
  Read(j, "bound_D", v.bound_d);
  Read(j, "bound_delta", v.bound_delta);
  Read(j, "bound_epsilon", v.bound_epsilon);
}

json RuntimeToJson(const RuntimeOptions& r) {
  return {{"graphs", r.graphs},
          {"hidden_dim", r.hidden_dim},
          {"T", r.step_counts},
          {"K", r.particle_counts},
          {"fixed_K", r.fixed_particles},
          {"fixed_T", r.fixed_steps},
          {"epochs", r.epochs},
          {"r2_min", r.r2_min},
          {"extrapolation_factor", r.extrapolation_factor},
          {"parallel_min_speedup", r.parallel_min_speedup}};
}

void RuntimeFromJson(const json& j, RuntimeOptions& r) {
  CheckKeys(j, "runtime",
            {"graphs", "hidden_dim", "T", "K", "fixed_K", "fixed_T", "epochs", "r2_min",
             "extrapolation_factor", "parallel_min_speedup"});
  Read(j, "graphs", r.graphs);
  Read(j, "hidden_dim", r.hidden_dim);
  Read(j, "T", r.step_counts);
  Read(j, "K", r.particle_counts);
  Read(j, "fixed_K", r.fixed_particles);
  Read(j, "fixed_T", r.fixed_steps);
  Read(j, "epochs", r.epochs);
  Read(j, "r2_min", r.r2_min);
  Read(j, "extrapolation_factor", r.extrapolation_factor);
  Read(j, "parallel_min_speedup", r.parallel_min_speedup);
}

json AblationToJson(const AblationOptions& a) {
  json grid = json::array();
  for (const auto& [t, k] : a.grid) grid.push_back({{"T", t}, {"K", k}});
  return {{"seeds", a.seeds},
          {"train_size", a.data.train_size},
          {"test_size", a.data.test_size},
          {"train_min_n", a.data.train_min_n},
          {"train_max_n", a.data.train_max_n},
          {"test_min_n", a.data.test_min_n},
          {"test_max_n", a.data.test_max_n},
          {"grid", grid}};
}

void AblationFromJson(const json& j, AblationOptions& a) {
  CheckKeys(j, "ablation",
            {"seeds", "train_size", "test_size", "train_min_n", "train_max_n",
             "test_min_n", "test_max_n", "grid"});
  Read(j, "seeds", a.seeds);
  Read(j, "train_size", a.data.train_size);
  Read(j, "test_size", a.data.test_size);
  Read(j, "train_min_n", a.data.train_min_n);
  Read(j, "train_max_n", a.data.train_max_n);
  Read(j, "test_min_n", a.data.test_min_n);
  Read(j, "test_max_n", a.data.test_max_n);
  if (j.contains("grid")) {
    a.grid.clear();
    for (const auto& cell : j.at("grid")) {
      CheckKeys(cell, "ablation.grid", {"T", "K"});
      a.grid.emplace_back(cell.at("T").get<int>(), cell.at("K").get<int>());
    }
  }
}

}  // namespace

std::string ExperimentConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["task"] = task;
  j["dataset"] = dataset;
  j["seed"] = seed;
  j["out"] = out_dir;
  j["pf"] = PfToJson(pf);
  j["model"] = ModelToJson(model);
  j["train"] = TrainToJson(train);
  j["csl"] = CslToJson(csl);
  j["iso"] = IsoToJson(iso);
  j["variance"] = VarianceToJson(variance);
  j["runtime"] = RuntimeToJson(runtime);
  j["ablation"] = AblationToJson(ablation);
  return j.dump();
}

ExperimentConfig ExperimentConfig::FromJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what(), e.byte);
  }
  ExperimentConfig c;
  try {
    CheckKeys(j, "config",
              {"task", "dataset", "seed", "out", "pf", "model", "train", "csl", "iso",
               "variance", "runtime", "ablation"});
    Read(j, "task", c.task);
    Read(j, "dataset", c.dataset);
    Read(j, "seed", c.seed);
    Read(j, "out", c.out_dir);
    if (j.contains("pf")) PfFromJson(j.at("pf"), c.pf);
    if (j.contains("model")) ModelFromJson(j.at("model"), c.model);
    if (j.contains("train")) TrainFromJson(j.at("train"), c.train);
    if (j.contains("csl")) CslFromJson(j.at("csl"), c.csl);
    if (j.contains("iso")) IsoFromJson(j.at("iso"), c.iso);
    if (j.contains("variance")) VarianceFromJson(j.at("variance"), c.variance);
    if (j.contains("runtime")) RuntimeFromJson(j.at("runtime"), c.runtime);
    if (j.contains("ablation")) AblationFromJson(j.at("ablation"), c.ablation);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("config: ") + e.what());
  }
  c.pf.Validate();
  c.train.Validate();
  return c;
}

ExperimentConfig ExperimentConfig::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot read config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return FromJson(buffer.str());
}

}  // namespace pfgnn
