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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "excitonq/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pulse-level simulator for exciton qubits in coupled quantum dots"};
  app.set_version_flag("--version", excitonq::kToolVersion);
  app.require_subcommand(1);

  std::string config;
  std::string out_dir = ".";
  const std::pair<const char*, const char*> commands[] = {
      {"shift", "Biexcitonic shift versus in-plane field"},
      {"spectrum", "Excitonic and biexcitonic absorption spectra"},
      {"compile", "Compile the gate program into a pulse sequence"},
      {"simulate", "Compile, propagate and report metrics"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "Run configuration file")->required();
    sub->add_option("--out-dir", out_dir, "Directory for output artifacts");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : excitonq::kExitUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  return excitonq::run_command(command, config, out_dir, std::cout, std::cerr);
}
