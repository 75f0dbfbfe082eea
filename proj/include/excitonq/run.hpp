// Copyright 2026 The excitonq Authors
//
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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "excitonq/config.hpp"

namespace excitonq {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Command { Shift, Spectrum, Compile, Simulate };

Command command_from_string(const std::string& name);
std::string to_string(Command command);

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Everything needed to reproduce a run. `text()` is itself a valid config.
struct RunManifest {
  std::string tool_version = kToolVersion;
  std::string command;
  std::string source;
  std::string input_sha256;
  std::string resolved_config;
  std::vector<std::string> resolved_notes;  // derived values, echoed as comments
  double wall_clock_s = 0.0;
  std::size_t steps = 0;

  std::string text() const;
};

struct RunReport {
  std::vector<std::string> artifacts;                        // written file paths
  std::vector<std::pair<std::string, std::string>> metrics;  // key=value summary
  RunManifest manifest;
};

RunReport run_shift(const RunConfig& config, const std::string& out_dir);
RunReport run_spectrum(const RunConfig& config, const std::string& out_dir);
RunReport run_compile(const RunConfig& config, const std::string& out_dir);
RunReport run_simulate(const RunConfig& config, const std::string& out_dir);

/// Loads the config, dispatches, writes the manifest and prints metrics to
/// `out`. Errors go to `err` prefixed with the config path; the return value
/// is the exit code.
int run_command(const std::string& command, const std::string& config_path,
                const std::string& out_dir, std::ostream& out, std::ostream& err);

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(const std::string& data);

}  // namespace excitonq
