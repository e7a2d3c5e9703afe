// Copyright 2026 The ReRo Bounds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "rero/cli/output.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "json.hpp"

namespace rero::cli {
namespace {

constexpr absl::string_view kCsvColumns =
    "method,family,p,N,effect_size,kappa,gamma,gamma_lower,gamma_upper,"
    "direction,wall_time_ms,noise_scale,status,message";

std::string Number(double x) {
  if (std::isnan(x)) return "nan";
  return absl::StrFormat("%.12g", x);
}

std::string CsvField(absl::string_view text) {
  if (text.find_first_of(",\"\n") == absl::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string HashText(uint64_t hash) { return absl::StrFormat("%016x", hash); }

nlohmann::json JsonNumber(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}

}  // namespace

uint64_t Fnv1a(absl::string_view bytes) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

uint64_t ConfigHash(const SweepConfig& config) {
  SweepConfig copy = config;
  copy.output.clear();
  copy.format = OutputFormat::kCsv;
  return Fnv1a(Serialize(copy));
}

std::string FormatCsv(const std::vector<Record>& records, uint64_t config_hash,
                      const OutputOptions& options) {
  std::string out = absl::StrCat("# rero_bounds ", kToolVersion,
                                 " config_hash=", HashText(config_hash), "\n",
                                 kCsvColumns, "\n");
  for (const Record& r : records) {
    absl::StrAppend(
        &out, EngineName(r.engine), ",", FamilyName(r.family), ",",
        Number(r.sampling_rate), ",", r.steps, ",", Number(r.effect_size), ",",
        Number(r.kappa), ",", Number(r.gamma), ",", Number(r.gamma_lower), ",",
        Number(r.gamma_upper), ",", AdjacencyName(r.direction), ",",
        options.timing ? absl::StrFormat("%.3f", r.wall_time_ms) : "", ",",
        Number(r.noise_scale), ",", StatusName(r.status), ",",
        CsvField(r.message), "\n");
  }
  return out;
}

std::string FormatJson(const std::vector<Record>& records,
                       const SweepConfig& config,
                       const OutputOptions& options) {
  nlohmann::ordered_json doc;
  doc["tool"] = "rero_bounds";
  doc["version"] = std::string(kToolVersion);
  doc["config_hash"] = HashText(ConfigHash(config));
  doc["config"] = Serialize(config);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const Record& r : records) {
    nlohmann::ordered_json row;
    row["method"] = std::string(EngineName(r.engine));
    row["family"] = std::string(FamilyName(r.family));
    row["p"] = r.sampling_rate;
    row["N"] = r.steps;
    row["effect_size"] = r.effect_size;
    row["kappa"] = r.kappa;
    row["gamma"] = JsonNumber(r.gamma);
    row["gamma_lower"] = JsonNumber(r.gamma_lower);
    row["gamma_upper"] = JsonNumber(r.gamma_upper);
    row["direction"] = std::string(AdjacencyName(r.direction));
    if (options.timing) {
      row["wall_time_ms"] = r.wall_time_ms;
    } else {
      row["wall_time_ms"] = nullptr;
    }
    row["memory_bytes"] = r.memory_bytes;
    row["noise_scale"] = r.noise_scale;
    row["status"] = std::string(StatusName(r.status));
    row["message"] = r.message;
    rows.push_back(std::move(row));
  }
  doc["records"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string FormatValidationCsv(const std::vector<ValidationRow>& rows,
                                uint64_t config_hash) {
  std::string out = absl::StrCat(
      "# rero_bounds ", kToolVersion, " config_hash=", HashText(config_hash),
      "\n",
      "method,family,p,N,effect_size,kappa,gamma,reference,reference_lower,"
      "reference_upper,deviation,tolerance,result\n");
  for (const ValidationRow& v : rows) {
    const Record& r = v.record;
    absl::StrAppend(&out, EngineName(r.engine), ",", FamilyName(r.family), ",",
                    Number(r.sampling_rate), ",", r.steps, ",",
                    Number(r.effect_size), ",", Number(r.kappa), ",",
                    Number(r.gamma), ",", EngineName(v.reference), ",",
                    Number(v.reference_lower), ",", Number(v.reference_upper),
                    ",", Number(v.deviation), ",", Number(v.tolerance), ",",
                    v.pass ? "PASS" : "FAIL", "\n");
  }
  return out;
}

std::string ResolveOutputPath(absl::string_view path) {
  std::filesystem::path p{std::string(path)};
  if (p.is_relative()) {
    if (const char* dir = std::getenv("RERO_OUTPUT_DIR");
        dir != nullptr && *dir != '\0') {
      p = std::filesystem::path(dir) / p;
    }
  }
  return p.string();
}

absl::Status WriteText(absl::string_view path, absl::string_view text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return std::cout ? absl::OkStatus()
                     : absl::DataLossError("writing to standard output failed");
  }
  const std::filesystem::path target{ResolveOutputPath(path)};
  std::error_code ec;
  if (target.has_parent_path()) {
    std::filesystem::create_directories(target.parent_path(), ec);
  }
  std::ofstream out(target, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot write '", target.string(), "'"));
  }
  return absl::OkStatus();
}

}  // namespace rero::cli
