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


#ifndef RERO_CLI_OUTPUT_H_
#define RERO_CLI_OUTPUT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "rero/cli/config.h"
#include "rero/cli/engines.h"
#include "rero/cli/sweep.h"

namespace rero::cli {

inline constexpr absl::string_view kToolVersion = "0.1.0";

// 64-bit FNV-1a.
uint64_t Fnv1a(absl::string_view bytes);

// Hash of the canonical config text, output location and format excluded.
uint64_t ConfigHash(const SweepConfig& config);

struct OutputOptions {
  // Wall times vary between runs, so they are omitted unless requested.
  bool timing = false;
};

std::string FormatCsv(const std::vector<Record>& records, uint64_t config_hash,
                      const OutputOptions& options = {});
std::string FormatJson(const std::vector<Record>& records,
                       const SweepConfig& config,
                       const OutputOptions& options = {});
std::string FormatValidationCsv(const std::vector<ValidationRow>& rows,
                                uint64_t config_hash);

// Output path for `path`: relative paths go under RERO_OUTPUT_DIR when set.
std::string ResolveOutputPath(absl::string_view path);

// Writes to the resolved path, or standard output when `path` is empty.
absl::Status WriteText(absl::string_view path, absl::string_view text);

}  // namespace rero::cli

#endif  // RERO_CLI_OUTPUT_H_
