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

#ifndef PFGNN_REPORT_H_
#define PFGNN_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace pfgnn {

struct Criterion {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Result of one harness run. Everything except `timings` is a function of
// the config and seed; timings are kept apart so report.json stays
// byte-for-byte reproducible.
struct RunReport {
  std::string task;
  std::string config_json;
  std::uint64_t seed = 0;
  std::string input_hash;  // git-style blob SHA-1 of config plus dataset

  // Per-epoch or per-row table; also the CSV body.
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::pair<std::string, double>> timings;
  std::vector<Criterion> criteria;
  std::vector<std::string> notes;

  void AddRow(std::vector<std::string> row);
  void AddMetric(const std::string& name, double value);
  void AddTiming(const std::string& name, double seconds);
  void AddCriterion(const std::string& name, bool passed, const std::string& detail);

  // True iff every asserted criterion passed.
  bool AllPassed() const;

  std::string ToJson() const;
  std::string TimingsJson() const;
  std::string ToCsv() const;
  // Aligned table followed by metrics and one PASS/FAIL line per criterion.
  std::string ToText() const;

  // Writes report.json, <task>.csv and timings.json into `dir`, creating it
  // if needed.
  void Write(const std::filesystem::path& dir) const;
};

// SHA-1 of "blob <size>\0" followed by the content, as lowercase hex.
std::string GitBlobHash(const std::string& content);

// Fixed-precision formatting used by all report tables.
std::string FormatNumber(double x, int precision = 4);

}  // namespace pfgnn

#endif  // PFGNN_REPORT_H_
