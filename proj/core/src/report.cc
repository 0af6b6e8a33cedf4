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

#include "pfgnn/report.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pfgnn/errors.h"

namespace pfgnn {
namespace {

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json PairsToJson(const std::vector<std::pair<std::string, double>>& pairs) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, value] : pairs) {
    j[name] = std::isfinite(value) ? nlohmann::json(value) : nlohmann::json(nullptr);
  }
  return j;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write " + path.string());
  out << text;
}

}  // namespace

void RunReport::AddRow(std::vector<std::string> row) {
  if (row.size() != columns.size()) {
    throw ArgumentError("row has " + std::to_string(row.size()) + " fields, expected " +
                        std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

void RunReport::AddMetric(const std::string& name, double value) {
  metrics.emplace_back(name, value);
}

void RunReport::AddTiming(const std::string& name, double seconds) {
  timings.emplace_back(name, seconds);
}

void RunReport::AddCriterion(const std::string& name, bool passed,
                             const std::string& detail) {
  criteria.push_back({name, passed, detail});
}

bool RunReport::AllPassed() const {
  return std::all_of(criteria.begin(), criteria.end(),
                     [](const Criterion& c) { return c.passed; });
}

std::string RunReport::ToJson() const {
  nlohmann::ordered_json j;
  j["task"] = task;
  j["seed"] = seed;
  j["input_hash"] = input_hash;
  j["config"] = config_json.empty() ? nlohmann::json::object()
                                    : nlohmann::json::parse(config_json);
  j["columns"] = columns;
  j["rows"] = rows;
  j["metrics"] = PairsToJson(metrics);
  j["criteria"] = nlohmann::json::array();
  for (const auto& c : criteria) {
    j["criteria"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  j["notes"] = notes;
  j["passed"] = AllPassed();
  return j.dump(2) + "\n";
}

std::string RunReport::TimingsJson() const {
  nlohmann::ordered_json j;
  j["task"] = task;
  j["input_hash"] = input_hash;
  j["seconds"] = PairsToJson(timings);
  return j.dump(2) + "\n";
}

std::string RunReport::ToCsv() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out << (i ? "," : "") << CsvField(columns[i]);
  }
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << CsvField(row[i]);
    }
    out << "\n";
  }
  return out.str();
}

std::string RunReport::ToText() const {
  std::ostringstream out;
  out << "task " << task << "  seed " << seed << "  input " << input_hash << "\n";
  if (!columns.empty()) {
    std::vector<std::size_t> width(columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        width[i] = std::max(width[i], row[i].size());
      }
    }
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        out << (i ? "  " : "") << cells[i]
            << std::string(width[i] - cells[i].size(), ' ');
      }
      out << "\n";
    };
    line(columns);
    for (const auto& row : rows) line(row);
  }
  for (const auto& [name, value] : metrics) {
    out << name << " = " << FormatNumber(value, 6) << "\n";
  }
  for (const auto& [name, value] : timings) {
    out << name << " = " << FormatNumber(value, 3) << " s\n";
  }
  for (const auto& note : notes) out << "note: " << note << "\n";
  for (const auto& c : criteria) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  }
  return out.str();
}

void RunReport::Write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  WriteFile(dir / "report.json", ToJson());
  WriteFile(dir / (task + ".csv"), ToCsv());
  WriteFile(dir / "timings.json", TimingsJson());
}

std::string GitBlobHash(const std::string& content) {
  std::string blob = "blob " + std::to_string(content.size());
  blob.push_back('\0');
  blob += content;
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(blob.data(), blob.size(), digest, &len, EVP_sha1(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::string FormatNumber(double x, int precision) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, x);
  return buf;
}

}  // namespace pfgnn
