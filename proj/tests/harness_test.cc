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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"
#include "pfgnn/coloring.h"
#include "pfgnn/datasets.h"
#include "pfgnn/errors.h"
#include "pfgnn/experiments.h"
#include "pfgnn/generators.h"
#include "pfgnn/graph6.h"
#include "pfgnn/ir_search.h"
#include "pfgnn/report.h"
#include "support/oracles.h"

namespace pfgnn {
namespace {

Digest Wl(const Graph& g) { return Certificate(g, Refine(g, Coloring::Initial(g))); }

TEST(DatasetTest, CslShape) {
  const auto data = MakeCsl(0);
  ASSERT_EQ(data.size(), 150u);
  std::map<int, int> per_class;
  for (const auto& item : data) {
    ++per_class[item.label];
    EXPECT_EQ(item.graph.num_vertices(), 41);
    for (int v = 0; v < 41; ++v) EXPECT_EQ(item.graph.degree(v), 4);
  }
  ASSERT_EQ(per_class.size(), 10u);
  for (const auto& [label, count] : per_class) EXPECT_EQ(count, 15) << label;
  EXPECT_EQ(data[14].label, 0);
  EXPECT_EQ(data[15].label, 1);
}

TEST(DatasetTest, CslIsSeeded) {
  const auto a = MakeCsl(3), b = MakeCsl(3), c = MakeCsl(4);
  EXPECT_EQ(ToGraph6(a[7].graph), ToGraph6(b[7].graph));
  EXPECT_NE(ToGraph6(a[7].graph), ToGraph6(c[7].graph));
}

TEST(DatasetTest, Wl1PairsAreHardAndNonIsomorphic) {
  const auto pairs = MakeWl1Pairs();
  ASSERT_GE(pairs.size(), 5u);
  for (const auto& p : pairs) {
    EXPECT_EQ(Wl(p.first), Wl(p.second)) << p.name;
    ASSERT_TRUE(p.isomorphic.has_value());
    EXPECT_FALSE(*p.isomorphic);
    if (p.first.num_vertices() <= 9) {
      EXPECT_FALSE(testing::BruteForceIsomorphic(p.first, p.second)) << p.name;
    }
    EXPECT_FALSE(IsoExact(p.first, p.second)) << p.name;
  }
}

TEST(DatasetTest, SrgPairParameters) {
  const auto pairs = MakeSrgPair();
  ASSERT_EQ(pairs.size(), 1u);
  for (const Graph* g : {&pairs[0].first, &pairs[0].second}) {
    EXPECT_EQ(g->num_vertices(), 16);
    EXPECT_EQ(g->num_edges(), 48);
  }
  EXPECT_EQ(Wl(pairs[0].first), Wl(pairs[0].second));
}

TEST(DatasetTest, TrianglesLabelsMatchBruteForce) {
  TrianglesOptions o;
  o.train_size = 40;
  o.test_size = 20;
  const TrianglesSplit split = MakeTrianglesSmall(5, o);
  ASSERT_EQ(split.train.size(), 40u);
  ASSERT_EQ(split.test.size(), 20u);
  std::map<int, int> per_class;
  for (const auto& item : split.train) {
    EXPECT_EQ(item.label, testing::CountTrianglesBruteForce(item.graph));
    EXPECT_GE(item.graph.num_vertices(), o.train_min_n);
    EXPECT_LE(item.graph.num_vertices(), o.train_max_n);
    ++per_class[item.label];
  }
  for (const auto& [label, count] : per_class) EXPECT_EQ(count, 4) << label;
  for (const auto& item : split.test) {
    EXPECT_EQ(item.label, testing::CountTrianglesBruteForce(item.graph));
    EXPECT_GE(item.graph.num_vertices(), o.test_min_n);
  }
}

TEST(DatasetTest, CountTrianglesAgreesWithOracle) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const Graph g = testing::RandomGraph(1 + static_cast<int>(rng() % 12), 0.4, rng);
    EXPECT_EQ(CountTriangles(g), testing::CountTrianglesBruteForce(g));
  }
}

TEST(DatasetTest, ControlsAreIsomorphic) {
  for (const auto& p : MakeIsomorphicControls(30, 3, 7, 2)) {
    EXPECT_TRUE(testing::BruteForceIsomorphic(p.first, p.second));
  }
}

TEST(DatasetTest, PairFile) {
  const auto dir = std::filesystem::temp_directory_path() / "pfgnn_pair_file";
  std::filesystem::create_directories(dir);
  const auto path = dir / "three.g6";
  {
    std::ofstream out(path);
    out << ToGraph6(Generate({gen::Cycle{5}})) << "\n"
        << ToGraph6(Generate({gen::Path{5}})) << "\n"
        << ToGraph6(Generate({gen::Complete{5}})) << "\n";
  }
  EXPECT_EQ(ReadPairFile(path.string()).size(), 3u);
  EXPECT_EQ(MakeDataset("sr25-file:" + path.string(), 0).pairs.size(), 3u);
  EXPECT_THROW(ReadPairFile((dir / "missing.g6").string()), ArgumentError);
  EXPECT_THROW(MakeDataset("no-such-set", 0), ArgumentError);
}

TEST(ReportTest, GitBlobHashKnownValues) {
  EXPECT_EQ(GitBlobHash(""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  EXPECT_EQ(GitBlobHash("hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST(ReportTest, FormatsAndValidates) {
  RunReport r;
  r.task = "demo";
  r.columns = {"a", "b"};
  r.AddRow({"1", "2"});
  EXPECT_THROW(r.AddRow({"1"}), ArgumentError);
  r.AddMetric("x", 0.5);
  r.AddTiming("total", 1.25);
  r.AddCriterion("first", true, "ok");
  EXPECT_TRUE(r.AllPassed());
  r.AddCriterion("second", false, "bad");
  EXPECT_FALSE(r.AllPassed());
  EXPECT_EQ(r.ToCsv(), "a,b\n1,2\n");
  const std::string text = r.ToText();
  EXPECT_NE(text.find("PASS first"), std::string::npos);
  EXPECT_NE(text.find("FAIL second"), std::string::npos);
  const auto j = nlohmann::json::parse(r.ToJson());
  EXPECT_EQ(j.at("task"), "demo");
  EXPECT_FALSE(j.contains("timings"));
  EXPECT_EQ(FormatNumber(0.123456, 3), "0.123");
}

TEST(ReportTest, WritesFiles) {
  RunReport r;
  r.task = "demo";
  r.columns = {"a"};
  r.AddRow({"1"});
  const auto dir = std::filesystem::temp_directory_path() / "pfgnn_report_out";
  std::filesystem::remove_all(dir);
  r.Write(dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "report.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "demo.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "timings.json"));
}

TEST(ConfigTest, RoundTrip) {
  ExperimentConfig c;
  c.seed = 9;
  c.pf.num_particles = 3;
  c.pf.alpha = 0.25;
  c.model.hidden_dim = 12;
  c.train.gamma = 0.5;
  c.variance.particle_counts = {2, 8};
  c.ablation.grid = {{1, 2}, {3, 4}};
  const ExperimentConfig d = ExperimentConfig::FromJson(c.ToJson());
  EXPECT_EQ(d.ToJson(), c.ToJson());
  EXPECT_EQ(d.pf.num_particles, 3);
  EXPECT_EQ(d.ablation.grid.size(), 2u);
}

TEST(ConfigTest, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(ExperimentConfig::FromJson(R"({"pf": {"particles": 3}})"), ArgumentError);
  EXPECT_THROW(ExperimentConfig::FromJson(R"({"bogus": 1})"), ArgumentError);
  EXPECT_THROW(ExperimentConfig::FromJson(R"({"pf": {"alpha": 2}})"), ArgumentError);
  EXPECT_THROW(ExperimentConfig::FromJson("{"), ParseError);
}

TEST(ExperimentTest, SamplePathBound) {
  EXPECT_EQ(SamplePathBound(1.0, 16, 0.05, 0.1),
            static_cast<std::int64_t>(std::ceil(8.0 * std::log(1280.0) / 0.01)));
  EXPECT_EQ(SamplePathBound(1.0, 16, 0.05, 0.1), 5724);
  EXPECT_THROW(SamplePathBound(1.0, 16, 1.5, 0.1), ArgumentError);
}

TEST(ExperimentTest, FitLine) {
  const LineFit exact = FitLine({1, 2, 3, 4}, {3, 5, 7, 9});
  EXPECT_NEAR(exact.slope, 2.0, 1e-12);
  EXPECT_NEAR(exact.intercept, 1.0, 1e-12);
  EXPECT_NEAR(exact.r2, 1.0, 1e-12);
  const LineFit noisy = FitLine({0, 1, 2}, {0, 1, 0});
  EXPECT_NEAR(noisy.slope, 0.0, 1e-12);
  EXPECT_NEAR(noisy.r2, 0.0, 1e-12);
  EXPECT_THROW(FitLine({1, 1}, {1, 2}), ArgumentError);
}

TEST(ExperimentTest, IsoExperimentOnWlPairs) {
  ExperimentConfig cfg;
  cfg.iso.mode = "exact";
  const RunReport r = RunIsoExperiment(cfg, MakeWl1Pairs());
  EXPECT_TRUE(r.AllPassed()) << r.ToText();
}

TEST(ExperimentTest, IsoReportIsReproducible) {
  ExperimentConfig cfg;
  cfg.iso.mode = "pf-hash";
  cfg.iso.trials = 10;
  cfg.iso.controls = 20;
  const auto pairs = MakeSrgPair();
  EXPECT_EQ(RunIsoExperiment(cfg, pairs).ToJson(), RunIsoExperiment(cfg, pairs).ToJson());
}

}  // namespace
}  // namespace pfgnn
