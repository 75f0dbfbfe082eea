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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "excitonq/analysis.hpp"
#include "excitonq/device.hpp"
#include "excitonq/dynamics.hpp"
#include "excitonq/model.hpp"
#include "excitonq/pulses.hpp"

namespace excitonq {

/// Plain-text run configuration: `[section]` headers followed by
/// `key = value` lines. `#` starts a comment. Keys may repeat (program gates).
struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct ConfigSection {
  std::string name;
  std::vector<ConfigEntry> entries;
  int line = 0;

  const ConfigEntry* find(const std::string& key) const;
  std::vector<const ConfigEntry*> find_all(const std::string& key) const;
};

class ConfigFile {
 public:
  static ConfigFile parse(const std::string& text, const std::string& origin = "<config>");
  static ConfigFile load(const std::string& path);

  const std::string& origin() const noexcept { return origin_; }
  const std::string& text() const noexcept { return text_; }
  const std::vector<ConfigSection>& sections() const noexcept { return sections_; }
  const ConfigSection* section(const std::string& name) const;
  bool has(const std::string& name) const { return section(name) != nullptr; }

 private:
  std::string origin_;
  std::string text_;
  std::vector<ConfigSection> sections_;
};

struct SweepSettings {
  std::vector<double> fields_kv_cm;
  std::size_t dot_l = 0;
  std::size_t dot_lp = 1;
};

struct SpectrumSettings {
  double energy_min_ev = 1.69;
  double energy_max_ev = 1.725;
  double energy_step_ev = 5e-5;
  double linewidth_mev = 0.5;
  std::vector<Conditioning> conditioning;  // empty: every single-exciton conditioning

  std::vector<double> grid() const;
};

struct MetricSettings {
  std::size_t initial_state = 0;
  std::optional<std::string> target_label;  // as written, e.g. "00+11"
  std::optional<ComplexVector> target_state;
};

struct OutputSettings {
  std::string trajectory = "trajectory.csv";
  std::string summary = "summary.txt";
  std::string manifest = "manifest.cfg";
  std::string sequence = "sequence.csv";
  std::string program = "program.txt";
  std::string shift = "shift.csv";
  std::string spectrum_prefix = "spectrum";
};

/// A parsed and validated run configuration with every default made explicit.
struct RunConfig {
  std::string source;
  std::optional<DeviceStructure> device;
  std::string device_preset;
  std::optional<std::vector<double>> register_energies_mev;
  Eigen::MatrixXd register_shifts_mev;
  std::optional<std::vector<double>> dipoles;
  bool has_program = false;
  std::vector<GateSpec> program;
  TimingPolicy timing;
  std::vector<LindbladChannel> channels;
  bool has_integration = false;
  SimulationConfig integration;
  bool has_sweep = false;
  SweepSettings sweep;
  SpectrumSettings spectrum;
  MetricSettings metrics;
  OutputSettings outputs;

  std::size_t n_dots() const;
  /// Builds the register from whichever source is configured.
  ExcitonRegister resolve_register() const;
};

RunConfig parse_run_config(const ConfigFile& file);
RunConfig load_run_config(const std::string& path);

/// Serializes the resolved configuration as config text; parsing it back
/// yields an identical run.
std::string to_config_text(const RunConfig& config);

/// Parses angles written as numbers or multiples of pi ("pi/2", "3*pi/4").
double parse_angle(const std::string& text);

/// Parses "00+11", "0.6*00-0.8*11": bit strings with qubit a first, normalized.
ComplexVector parse_state(const std::string& text, std::size_t n_qubits);

/// Dot by letter ("a") or zero-based index ("0").
std::size_t parse_dot(const std::string& text);

}  // namespace excitonq
