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

#include "excitonq/run.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "excitonq/analysis.hpp"
#include "excitonq/csv.hpp"
#include "excitonq/errors.hpp"

namespace excitonq {
namespace fs = std::filesystem;

namespace {

std::string out_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

double ev(double mev) { return units::mev_to_ev(mev); }

std::string describe_register(const ExcitonRegister& reg) {
  std::ostringstream o;
  for (std::size_t l = 0; l < reg.size(); ++l) {
    o << (l ? ", " : "") << "E_" << basis::dot_name(l) << " = "
      << format_number(ev(reg.exciton_energy_mev(l))) << " eV";
  }
  for (std::size_t l = 0; l < reg.size(); ++l) {
    for (std::size_t k = l + 1; k < reg.size(); ++k) {
      o << ", dE_" << basis::dot_name(l) << basis::dot_name(k) << " = "
        << format_number(reg.shift_mev(l, k)) << " meV";
    }
  }
  return o.str();
}

std::string conditioning_label(const std::vector<int>& occ) {
  std::string s;
  for (std::size_t k = 0; k < occ.size(); ++k) {
    if (!occ[k]) continue;
    s += (s.empty() ? "" : "+") + basis::dot_name(k);
  }
  return s.empty() ? "none" : s;
}

std::string gate_text(const GateSpec& g) {
  std::ostringstream o;
  o << to_string(g.kind) << " on " << basis::dot_name(g.target) << ", angle "
    << format_number(g.angle_rad) << " rad";
  for (const auto& c : g.conditions) {
    o << ", if " << basis::dot_name(c.dot) << " = " << c.occupation;
  }
  return o.str();
}

PulseSequence compile_checked(const ExcitonRegister& reg, const RunConfig& cfg) {
  try {
    return compile_program(reg, cfg.program, cfg.timing);
  } catch (const CompileError& e) {
    std::string msg = e.what();
    if (e.required_tau_ps()) {
      msg += " (tau_ps >= " + format_number(*e.required_tau_ps()) + " would satisfy selectivity)";
    }
    throw ConfigError("program", msg);
  }
}

CsvTable sequence_table(const PulseSequence& seq) {
  CsvTable t("Gaussian pulses in time order: centre and std-dev tau (ps), carrier photon energy, "
             "on-resonance rotation angle, optical phase",
             {"center_ps", "tau_ps", "carrier_eV", "area_rad", "phase_rad"});
  for (const auto& p : seq.pulses()) {
    t.add_row(std::vector<double>{p.center_ps, p.tau_ps, ev(p.carrier_mev), p.area_rad, p.phase_rad});
  }
  return t;
}

std::string program_echo(const RunConfig& cfg, const ExcitonRegister& reg, const PulseSequence& seq) {
  std::ostringstream o;
  o << "register: " << describe_register(reg) << "\n";
  o << "timing: tau " << format_number(cfg.timing.tau_ps) << " ps, spacing "
    << format_number(cfg.timing.spacing_tau) << " tau\n";
  std::size_t p = 0;
  for (std::size_t i = 0; i < cfg.program.size(); ++i) {
    const auto& g = cfg.program[i];
    o << "gate " << i << ": " << gate_text(g) << "\n";
    // compile_program emits a gate's pulses contiguously
    const std::size_t count = compile_gate(reg, g, cfg.timing, 0.0).size();
    for (std::size_t k = 0; k < count && p < seq.size(); ++k, ++p) {
      const auto& pulse = seq.pulses()[p];
      o << "  pulse at " << format_number(pulse.center_ps) << " ps, "
        << format_number(ev(pulse.carrier_mev)) << " eV, area " << format_number(pulse.area_rad)
        << " rad\n";
    }
  }
  if (cfg.program.empty()) o << "(empty program)\n";
  return o.str();
}

}  // namespace

Command command_from_string(const std::string& name) {
  if (name == "shift") return Command::Shift;
  if (name == "spectrum") return Command::Spectrum;
  if (name == "compile") return Command::Compile;
  if (name == "simulate") return Command::Simulate;
  throw InvalidParameter("unknown command '" + name + "'");
}

std::string to_string(Command command) {
  switch (command) {
    case Command::Shift: return "shift";
    case Command::Spectrum: return "spectrum";
    case Command::Compile: return "compile";
    case Command::Simulate: return "simulate";
  }
  return "?";
}

std::string RunManifest::text() const {
  std::ostringstream o;
  o << "# excitonq run manifest; re-run with: excitonq " << command << " --config <this file>\n"
    << "# tool_version = " << tool_version << "\n"
    << "# command = " << command << "\n"
    << "# source = " << source << "\n"
    << "# input_sha256 = " << input_sha256 << "\n"
    << "# wall_clock_s = " << std::fixed << std::setprecision(3) << wall_clock_s << "\n"
    << "# steps = " << steps << "\n";
  for (const auto& n : resolved_notes) o << "# " << n << "\n";
  o << "\n" << resolved_config;
  return o.str();
}

RunReport run_shift(const RunConfig& cfg, const std::string& out_dir) {
  if (!cfg.device) throw ConfigError("device", "section required for the shift sweep");
  if (!cfg.has_sweep || cfg.sweep.fields_kv_cm.empty()) {
    throw ConfigError("sweep", "field grid is empty");
  }
  std::vector<ShiftPoint> points;
  try {
    points = shift_vs_field(*cfg.device, cfg.sweep.dot_l, cfg.sweep.dot_lp, cfg.sweep.fields_kv_cm);
  } catch (const InvalidParameter& e) {
    throw ConfigError("sweep", e.what());
  }
  const std::string pair = basis::dot_name(cfg.sweep.dot_l) + basis::dot_name(cfg.sweep.dot_lp);
  CsvTable t("biexcitonic shift between dots " + basis::dot_name(cfg.sweep.dot_l) + " and " +
                 basis::dot_name(cfg.sweep.dot_lp) + " versus in-plane field along x",
             {"field_kV_cm", "delta_E_meV"});
  RunReport r;
  for (const auto& p : points) {
    t.add_row(std::vector<double>{p.field_kv_cm, p.shift_mev});
    r.metrics.emplace_back("delta_E_" + pair + "_meV@" + format_number(p.field_kv_cm),
                           format_number(p.shift_mev));
  }
  const auto path = out_path(out_dir, cfg.outputs.shift);
  t.write(path);
  r.artifacts.push_back(path);
  r.metrics.emplace_back("points", std::to_string(points.size()));
  return r;
}

RunReport run_spectrum(const RunConfig& cfg, const std::string& out_dir) {
  const ExcitonRegister reg = cfg.resolve_register();
  const auto grid = cfg.spectrum.grid();
  RunReport r;
  r.manifest.resolved_notes.push_back("register: " + describe_register(reg));
  CsvTable lines("stick spectrum: absorbing dot, occupied dots before absorption, line energy, weight",
                 {"kind", "dot", "occupied", "energy_eV", "weight"});
  for (auto kind : {SpectrumKind::Excitonic, SpectrumKind::Biexcitonic}) {
    const bool bi = kind == SpectrumKind::Biexcitonic;
    if (bi && reg.size() < 2) continue;
    AbsorptionSpectrum s;
    try {
      s = absorption_spectrum(reg, kind, bi ? std::span<const Conditioning>(cfg.spectrum.conditioning)
                                            : std::span<const Conditioning>{},
                              grid, cfg.spectrum.linewidth_mev);
    } catch (const InvalidParameter& e) {
      throw ConfigError("spectrum", e.what());
    }
    const std::string name = bi ? "biexcitonic" : "excitonic";
    CsvTable t(name + " absorption, Lorentzian FWHM " + format_number(s.linewidth_mev) +
                   " meV, intensity per eV summed over lines",
               {"energy_eV", "intensity"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      t.add_row(std::vector<double>{grid[i], s.intensity[i]});
    }
    const auto path = out_path(out_dir, cfg.outputs.spectrum_prefix + "_" + name + ".csv");
    t.write(path);
    r.artifacts.push_back(path);
    for (const auto& l : s.lines) {
      lines.add_row(std::vector<std::string>{name, basis::dot_name(l.dot),
                                             conditioning_label(l.conditioning),
                                             format_number(ev(l.energy_mev)), format_number(l.weight)});
      r.metrics.emplace_back(name + "_" + basis::dot_name(l.dot) + "|" +
                                 conditioning_label(l.conditioning) + "_eV",
                             format_number(ev(l.energy_mev)));
    }
  }
  const auto path = out_path(out_dir, cfg.outputs.spectrum_prefix + "_lines.csv");
  lines.write(path);
  r.artifacts.push_back(path);
  return r;
}

RunReport run_compile(const RunConfig& cfg, const std::string& out_dir) {
  if (!cfg.has_program) throw ConfigError("program", "section required for compile");
  const ExcitonRegister reg = cfg.resolve_register();
  const PulseSequence seq = compile_checked(reg, cfg);
  RunReport r;
  r.manifest.resolved_notes.push_back("register: " + describe_register(reg));
  const auto seq_path = out_path(out_dir, cfg.outputs.sequence);
  sequence_table(seq).write(seq_path);
  const auto echo_path = out_path(out_dir, cfg.outputs.program);
  write_text_file(echo_path, program_echo(cfg, reg, seq));
  r.artifacts = {seq_path, echo_path};
  r.metrics.emplace_back("pulses", std::to_string(seq.size()));
  r.metrics.emplace_back("start_ps", format_number(seq.start_ps()));
  r.metrics.emplace_back("end_ps", format_number(seq.end_ps()));
  return r;
}

RunReport run_simulate(const RunConfig& cfg, const std::string& out_dir) {
  if (!cfg.has_program) throw ConfigError("program", "section required for simulate");
  if (!cfg.has_integration) throw ConfigError("integration", "section required for simulate");
  const ExcitonRegister reg = cfg.resolve_register();
  const std::size_t n = reg.size();
  const PulseSequence seq = compile_checked(reg, cfg);
  try {
    cfg.integration.validate(seq);
  } catch (const InvalidParameter& e) {
    throw ConfigError("integration", e.what());
  }
  const auto rho0 = DensityMatrix::basis_state(n, cfg.metrics.initial_state);
  const Trajectory tr = propagate(rho0, seq, reg, cfg.channels, cfg.integration);

  RunReport r;
  r.manifest.steps = tr.steps;
  r.manifest.resolved_notes.push_back("register: " + describe_register(reg));
  r.manifest.resolved_notes.push_back(
      "reference_eV = " +
      format_number(ev(cfg.integration.reference_mev.value_or(default_reference_mev(reg)))));

  const std::size_t dim = reg.dimension();
  std::vector<std::string> cols{"t_ps"};
  std::string order;
  for (std::size_t i = 0; i < dim; ++i) {
    cols.push_back("pop_" + basis::label(i, n));
    order += (i ? " " : "") + basis::label(i, n);
  }
  for (std::size_t l = 0; l < n; ++l) cols.push_back("n_" + basis::dot_name(l));
  cols.push_back("re_coh_sel");
  cols.push_back("im_coh_sel");
  const std::string coh = "<" + basis::label(tr.coherence_row, n) + "|rho|" +
                          basis::label(tr.coherence_col, n) + ">";
  CsvTable t("basis labels list dot a first (pop_10: a excited, b empty); order " + order +
                 "; n_l = <n_l>; coh_sel = " + coh + " in the computational frame",
             cols);
  for (std::size_t k = 0; k < tr.times_ps.size(); ++k) {
    std::vector<double> row{tr.times_ps[k]};
    row.insert(row.end(), tr.populations[k].begin(), tr.populations[k].end());
    row.insert(row.end(), tr.occupations[k].begin(), tr.occupations[k].end());
    row.push_back(tr.coherences[k].real());
    row.push_back(tr.coherences[k].imag());
    t.add_row(row);
  }
  const auto traj_path = out_path(out_dir, cfg.outputs.trajectory);
  t.write(traj_path);
  const auto seq_path = out_path(out_dir, cfg.outputs.sequence);
  sequence_table(seq).write(seq_path);

  const DensityMatrix& fin = *tr.final_computational;
  auto& m = r.metrics;
  if (cfg.metrics.target_state) {
    m.emplace_back("target_state", *cfg.metrics.target_label);
    m.emplace_back("fidelity", format_number(fidelity(fin, *cfg.metrics.target_state)));
  }
  if (n == 2) m.emplace_back("concurrence", format_number(concurrence(fin)));
  for (std::size_t l = 0; l < n; ++l) m.emplace_back("n_" + basis::dot_name(l), format_number(tr.occupations.back()[l]));
  const auto pops = fin.populations();
  for (std::size_t i = 0; i < dim; ++i) m.emplace_back("pop_" + basis::label(i, n), format_number(pops[i]));
  m.emplace_back("purity", format_number(fin.purity()));
  m.emplace_back("max_trace_drift", format_number(tr.max_trace_drift));
  m.emplace_back("pulses", std::to_string(seq.size()));
  m.emplace_back("steps", std::to_string(tr.steps));
  m.emplace_back("samples", std::to_string(tr.times_ps.size()));
  m.emplace_back("t_start_ps", format_number(tr.times_ps.front()));
  m.emplace_back("t_end_ps", format_number(tr.times_ps.back()));

  std::string summary;
  for (const auto& [k, v] : m) summary += k + "=" + v + "\n";
  const auto sum_path = out_path(out_dir, cfg.outputs.summary);
  write_text_file(sum_path, summary);
  r.artifacts = {traj_path, seq_path, sum_path};
  return r;
}

int run_command(const std::string& command, const std::string& config_path,
                const std::string& out_dir, std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  try {
    const Command cmd = command_from_string(command);
    const ConfigFile file = ConfigFile::load(config_path);
    const RunConfig cfg = parse_run_config(file);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error("cannot create output directory '" + out_dir + "': " + ec.message());

    RunReport r;
    switch (cmd) {
      case Command::Shift: r = run_shift(cfg, out_dir); break;
      case Command::Spectrum: r = run_spectrum(cfg, out_dir); break;
      case Command::Compile: r = run_compile(cfg, out_dir); break;
      case Command::Simulate: r = run_simulate(cfg, out_dir); break;
    }
    r.manifest.command = to_string(cmd);
    r.manifest.source = config_path;
    r.manifest.input_sha256 = sha256_hex(file.text());
    r.manifest.resolved_config = to_config_text(cfg);
    r.manifest.wall_clock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    const auto manifest_path = out_path(out_dir, cfg.outputs.manifest);
    write_text_file(manifest_path, r.manifest.text());
    r.artifacts.push_back(manifest_path);

    for (const auto& [k, v] : r.metrics) out << k << "=" << v << "\n";
    for (const auto& a : r.artifacts) out << "wrote " << a << "\n";
    return kExitOk;
  } catch (const PropagationError& e) {
    err << config_path << ": propagation diagnostics failed at step " << e.step() << ": "
        << e.what() << "\n";
    return kExitNumerical;
  } catch (const ConvergenceError& e) {
    err << config_path << ": " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NumericalConsistencyError& e) {
    err << config_path << ": " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << config_path << ": " << e.what() << "\n";
    return kExitUsage;
  }
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::ostringstream o;
  for (unsigned int i = 0; i < len; ++i) {
    o << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return o.str();
}

}  // namespace excitonq
