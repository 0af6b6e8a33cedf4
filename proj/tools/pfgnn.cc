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

// Command-line front end for the pfgnn harness.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "pfgnn/datasets.h"
#include "pfgnn/errors.h"
#include "pfgnn/experiments.h"
#include "pfgnn/generators.h"
#include "pfgnn/graph6.h"
#include "pfgnn/ir_search.h"
#include "pfgnn/nn.h"

namespace {

using namespace pfgnn;

struct Overrides {
  std::optional<int> k;
  std::optional<int> t;
  std::optional<double> alpha;
  std::optional<double> gamma;
  std::optional<int> epochs;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> policy;
  bool reinforce_include_resampling = false;
  bool policy_backbone_gradient = false;
  std::string out;
  std::string trace;
  bool quiet = false;

  void Apply(ExperimentConfig& cfg) const {
    if (k) cfg.pf.num_particles = *k;
    if (t) cfg.pf.steps = *t;
    if (alpha) cfg.pf.alpha = *alpha;
    if (gamma) cfg.train.gamma = *gamma;
    if (epochs) cfg.train.epochs = *epochs;
    if (seed) cfg.seed = *seed;
    if (policy) cfg.model.policy = *policy == "gnn" ? PolicyKind::kGnn : PolicyKind::kMlp;
    if (reinforce_include_resampling) cfg.pf.reinforce_include_resampling = true;
    if (policy_backbone_gradient) cfg.model.policy_backbone_gradient = true;
    if (!out.empty()) cfg.out_dir = out;
    cfg.pf.Validate();
    cfg.train.Validate();
  }
};

void AddPfOptions(CLI::App* app, Overrides& o) {
  app->add_option("--K", o.k, "particles")->check(CLI::PositiveNumber);
  app->add_option("--T", o.t, "individualization steps")->check(CLI::NonNegativeNumber);
  app->add_option("--alpha", o.alpha, "soft-resampling mix")->check(CLI::Range(0.0, 1.0));
  app->add_option("--seed", o.seed, "run seed");
  app->add_option("--out", o.out, "output directory for report.json and CSV");
  app->add_flag("--quiet", o.quiet, "no progress lines on stderr");
}

ExperimentConfig LoadConfig(const std::string& path) {
  return path.empty() ? ExperimentConfig{} : ExperimentConfig::FromFile(path);
}

ProgressLog MakeLog(bool quiet) {
  if (quiet) return nullptr;
  return [](const std::string& line) { std::cerr << line << "\n"; };
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write " + path);
  out << text;
}

int Finish(const RunReport& report, const ExperimentConfig& cfg) {
  std::cout << report.ToText();
  if (!cfg.out_dir.empty()) report.Write(cfg.out_dir);
  return report.AllPassed() ? 0 : 1;
}

Graph FirstGraph(const std::string& path) {
  const auto graphs = ReadGraphFile(path);
  if (graphs.empty()) throw ArgumentError("no graph in " + path);
  return graphs.front();
}

std::string CheckpointHeader(const ExperimentConfig& cfg, const ModelConfig& model) {
  nlohmann::json j;
  j["model"] = nlohmann::json::parse(model.ToJson());
  j["config"] = nlohmann::json::parse(cfg.ToJson());
  return j.dump();
}

int RunCanon(const std::string& file) {
  for (const Graph& g : ReadGraphFile(file)) {
    std::cout << "n=" << g.num_vertices() << " cert=" << ComputeCanonicalForm(g).Hex()
              << "\n";
  }
  return 0;
}

int RunIso(const std::vector<std::string>& files, const std::string& dataset,
           const std::string& mode, int trials, int controls, const Overrides& o) {
  ExperimentConfig cfg;
  cfg.iso.mode = mode;
  cfg.iso.trials = mode == "exact" ? 1 : trials;
  cfg.iso.controls = controls;
  cfg.pf.num_particles = 4;
  cfg.pf.steps = 2;
  o.Apply(cfg);
  std::vector<GraphPair> pairs;
  if (!dataset.empty()) {
    cfg.dataset = dataset;
    pairs = MakeDataset(dataset, cfg.seed).pairs;
    if (pairs.empty()) throw ArgumentError("dataset " + dataset + " holds no pairs");
  } else {
    if (files.size() != 2) throw ArgumentError("iso needs two graph files or --dataset");
    pairs.push_back({files[0] + " / " + files[1], FirstGraph(files[0]), FirstGraph(files[1]),
                     std::nullopt});
  }
  if (!o.trace.empty()) {
    if (mode != "pf-hash") throw ArgumentError("--trace needs --mode pf-hash");
    PfConfig pf = cfg.pf;
    pf.seed = cfg.seed;
    nlohmann::json j;
    j["first"] = nlohmann::json::parse(TraceHashChain(pairs[0].first, pf));
    j["second"] = nlohmann::json::parse(TraceHashChain(pairs[0].second, pf));
    WriteText(o.trace, j.dump(2) + "\n");
  }
  const RunReport report = RunIsoExperiment(cfg, pairs, MakeLog(o.quiet));
  if (pairs.size() == 1 && !pairs[0].isomorphic) {
    std::cout << "verdict: "
              << (report.rows[0][4] == FormatNumber(0.0) ? "not distinguished"
                                                         : "distinguished")
              << "\n";
  }
  return Finish(report, cfg);
}

int RunTrain(const std::string& task, const std::string& config,
             const std::string& checkpoint, const Overrides& o) {
  if (task != "csl") throw ArgumentError("unsupported training task " + task);
  ExperimentConfig cfg = LoadConfig(config);
  cfg.task = "train-csl";
  cfg.dataset = "csl";
  o.Apply(cfg);
  const CslRun run = TrainCsl(cfg, MakeLog(o.quiet));
  ModelConfig model = cfg.model;
  model.steps = cfg.pf.steps;
  model.num_classes = static_cast<int>(kCslSkips.size());
  std::string ckpt = checkpoint;
  if (ckpt.empty() && !cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    ckpt = (std::filesystem::path(cfg.out_dir) / "model.ckpt").string();
  }
  if (!ckpt.empty()) {
    SaveCheckpoint(ckpt, run.params, CheckpointHeader(cfg, model), cfg.seed);
  }
  if (!o.trace.empty()) {
    const PfGnnModel trained(model, run.params);
    PfConfig pf = cfg.pf;
    pf.seed = cfg.seed;
    WriteText(o.trace, TraceNeuralChain(trained, MakeCsl(cfg.seed).front().graph, pf));
  }
  return Finish(run.report, cfg);
}

int RunEval(const std::string& checkpoint, const std::string& dataset, const Overrides& o) {
  Checkpoint ckpt = LoadCheckpoint(checkpoint);
  const auto header = nlohmann::json::parse(ckpt.hyperparameters_json);
  if (!header.contains("model")) throw ArgumentError("checkpoint lacks a model config");
  const ModelConfig model_config = ModelConfig::FromJson(header["model"].dump());
  ExperimentConfig cfg;
  if (header.contains("config")) cfg = ExperimentConfig::FromJson(header["config"].dump());
  cfg.task = "eval";
  cfg.dataset = dataset;
  cfg.out_dir.clear();
  o.Apply(cfg);
  const PfGnnModel model(model_config, std::move(ckpt.store));
  return Finish(EvaluateModel(cfg, model, MakeLog(o.quiet)), cfg);
}

int RunStudy(const std::string& kind, const std::string& config, const Overrides& o) {
  ExperimentConfig cfg = LoadConfig(config);
  o.Apply(cfg);
  const ProgressLog log = MakeLog(o.quiet);
  if (kind == "variance") {
    cfg.task = "variance-study";
    return Finish(VarianceStudy(cfg, log), cfg);
  }
  if (kind == "runtime") {
    cfg.task = "runtime-study";
    return Finish(RuntimeStudy(cfg, log), cfg);
  }
  if (kind == "ablation") {
    cfg.task = "ablation";
    return Finish(Ablation(cfg, log), cfg);
  }
  throw ArgumentError("unknown study " + kind);
}

void WriteLabeled(const std::filesystem::path& dir, const std::string& stem,
                  const std::vector<LabeledGraph>& graphs) {
  std::ofstream g6(dir / (stem + ".g6"));
  std::ofstream labels(dir / (stem + "_labels.csv"));
  labels << "index,label\n";
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    g6 << ToGraph6(graphs[i].graph) << "\n";
    labels << i << "," << graphs[i].label << "\n";
  }
}

int RunDatasetMake(const std::string& spec, const std::string& out, std::uint64_t seed) {
  if (out.empty()) throw ArgumentError("dataset make needs --out");
  const Dataset d = MakeDataset(spec, seed);
  const std::filesystem::path dir(out);
  std::filesystem::create_directories(dir);
  if (!d.graphs.empty()) WriteLabeled(dir, d.test.empty() ? "graphs" : "train", d.graphs);
  if (!d.test.empty()) WriteLabeled(dir, "test", d.test);
  if (!d.pairs.empty()) {
    std::ofstream g6(dir / "pairs.g6");
    std::ofstream csv(dir / "pairs.csv");
    csv << "index,name,expected\n";
    for (std::size_t i = 0; i < d.pairs.size(); ++i) {
      g6 << ToGraph6(d.pairs[i].first) << "\n" << ToGraph6(d.pairs[i].second) << "\n";
      const auto& iso = d.pairs[i].isomorphic;
      csv << i << "," << d.pairs[i].name << ","
          << (iso ? (*iso ? "iso" : "non-iso") : "unknown") << "\n";
    }
  }
  std::cout << spec << ": " << d.graphs.size() + d.test.size() << " graphs, "
            << d.pairs.size() << " pairs written to " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Particle-filter graph networks: exact canonical forms, sampled "
               "individualization and the experiment harness."};
  app.require_subcommand(1);

  std::string canon_file;
  auto* canon = app.add_subcommand("canon", "Canonical certificate of every graph in a file");
  canon->add_option("file", canon_file, "graph6 or edge-list file")->required();

  Overrides iso_o;
  std::vector<std::string> iso_files;
  std::string iso_mode = "exact", iso_dataset;
  int iso_trials = 1, iso_controls = 0;
  auto* iso = app.add_subcommand("iso", "Isomorphism verdicts for two graphs or a pair dataset");
  iso->add_option("files", iso_files, "two graph files");
  iso->add_option("--dataset", iso_dataset, "srg-pair, wl1-pairs or sr25-file:<path>");
  iso->add_option("--mode", iso_mode, "exact or pf-hash")
      ->check(CLI::IsMember({"exact", "pf-hash"}));
  iso->add_option("--trials", iso_trials, "seeded pf-hash trials per pair")
      ->check(CLI::PositiveNumber);
  iso->add_option("--controls", iso_controls, "isomorphic control pairs (pf-hash)");
  iso->add_option("--trace", iso_o.trace, "write belief snapshots of the first pair as JSON");
  AddPfOptions(iso, iso_o);

  Overrides train_o;
  std::string train_task, train_config, train_ckpt;
  auto* train = app.add_subcommand("train", "Cross-validated training");
  train->add_option("--task", train_task, "training task")->required()
      ->check(CLI::IsMember({"csl"}));
  train->add_option("--config", train_config, "JSON config");
  train->add_option("--gamma", train_o.gamma, "policy-loss weight")
      ->check(CLI::NonNegativeNumber);
  train->add_option("--epochs", train_o.epochs, "epoch cap")->check(CLI::PositiveNumber);
  train->add_option("--policy", train_o.policy, "vertex policy network")
      ->check(CLI::IsMember({"mlp", "gnn"}));
  train->add_flag("--reinforce-include-resampling", train_o.reinforce_include_resampling,
                  "add resampling log-probabilities to the score-function term");
  train->add_flag("--policy-backbone-gradient", train_o.policy_backbone_gradient,
                  "let the score-function term reach the shared embeddings");
  train->add_option("--checkpoint", train_ckpt, "checkpoint path (default <out>/model.ckpt)");
  train->add_option("--trace", train_o.trace, "write belief snapshots of a trained chain");
  AddPfOptions(train, train_o);

  Overrides eval_o;
  std::string eval_ckpt, eval_dataset = "csl";
  auto* eval = app.add_subcommand("eval", "Accuracy of a checkpoint on a dataset");
  eval->add_option("checkpoint", eval_ckpt, "checkpoint file")->required();
  eval->add_option("--dataset", eval_dataset, "csl or triangles-small");
  AddPfOptions(eval, eval_o);

  Overrides study_o;
  std::string study_kind, study_config;
  auto* study = app.add_subcommand("study", "Variance, runtime or ablation study");
  study->add_option("kind", study_kind, "variance, runtime or ablation")->required()
      ->check(CLI::IsMember({"variance", "runtime", "ablation"}));
  study->add_option("--config", study_config, "JSON config");
  study->add_option("--gamma", study_o.gamma, "policy-loss weight");
  study->add_option("--epochs", study_o.epochs, "epoch cap");
  AddPfOptions(study, study_o);

  std::string ds_action, ds_spec, ds_out;
  std::uint64_t ds_seed = 0;
  auto* dataset = app.add_subcommand("dataset", "Write a generated dataset as graph6");
  dataset->add_option("action", ds_action, "make")->required()->check(CLI::IsMember({"make"}));
  dataset->add_option("spec", ds_spec, "dataset name")->required();
  dataset->add_option("--out", ds_out, "output directory")->required();
  dataset->add_option("--seed", ds_seed, "generation seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*canon) return RunCanon(canon_file);
    if (*iso) return RunIso(iso_files, iso_dataset, iso_mode, iso_trials, iso_controls, iso_o);
    if (*train) return RunTrain(train_task, train_config, train_ckpt, train_o);
    if (*eval) return RunEval(eval_ckpt, eval_dataset, eval_o);
    if (*study) return RunStudy(study_kind, study_config, study_o);
    if (*dataset) return RunDatasetMake(ds_spec, ds_out, ds_seed);
  } catch (const std::exception& e) {
    std::cerr << "pfgnn: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
