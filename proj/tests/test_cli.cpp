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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "excitonq/csv.hpp"
#include "excitonq/run.hpp"

namespace excitonq {
namespace {

namespace fs = std::filesystem;

const std::string kSource = EXCITONQ_SOURCE_DIR;

std::string preset(const std::string& name) { return kSource + "/presets/" + name; }

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("excitonq_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::string& cmd, const std::string& config, const fs::path& dir) {
  std::ostringstream out, err;
  const int code = run_command(cmd, config, dir.string(), out, err);
  return {code, out.str(), err.str()};
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const auto p = dir / "run.cfg";
  write_text_file(p.string(), text);
  return p;
}

TEST(Cli, FormatNumberRoundTrips) {
  for (double v : {0.1, 1.7145, 1e-300, -2.5e7, 1.0 / 3.0}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
  EXPECT_EQ(format_number(-0.0), "0");
}

TEST(Cli, SimulatePresetIsDeterministic) {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  const auto ra = run("simulate", preset("fig3.cfg"), a);
  const auto rb = run("simulate", preset("fig3.cfg"), b);
  ASSERT_EQ(ra.code, 0) << ra.err;
  ASSERT_EQ(rb.code, 0) << rb.err;
  for (const char* f : {"trajectory.csv", "sequence.csv", "summary.txt"}) {
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  const auto traj = lines_of(slurp(a / "trajectory.csv"));
  ASSERT_GT(traj.size(), 3U);
  EXPECT_EQ(traj[0][0], '#');
  EXPECT_EQ(traj[1], "t_ps,pop_00,pop_10,pop_01,pop_11,n_a,n_b,re_coh_sel,im_coh_sel");
  const auto summary = slurp(a / "summary.txt");
  const auto pos = summary.find("fidelity=");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_GE(std::stod(summary.substr(pos + 9)), 0.95);
}

TEST(Cli, ManifestReproducesTheRun) {
  const auto a = scratch("manifest_a");
  const auto b = scratch("manifest_b");
  ASSERT_EQ(run("simulate", preset("fig3.cfg"), a).code, 0);
  const auto manifest = slurp(a / "manifest.cfg");
  EXPECT_NE(manifest.find("input_sha256 = "), std::string::npos);
  EXPECT_NE(manifest.find("steps = "), std::string::npos);
  const auto rb = run("simulate", (a / "manifest.cfg").string(), b);
  ASSERT_EQ(rb.code, 0) << rb.err;
  EXPECT_EQ(slurp(a / "trajectory.csv"), slurp(b / "trajectory.csv"));
  EXPECT_EQ(slurp(a / "summary.txt"), slurp(b / "summary.txt"));
}

TEST(Cli, ShiftSweepOnPreset) {
  const auto d = scratch("shift");
  const auto r = run("shift", preset("device_calib.cfg"), d);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines_of(slurp(d / "shift.csv"));
  ASSERT_EQ(rows.size(), 11U);
  EXPECT_EQ(rows[1], "field_kV_cm,delta_E_meV");
  double prev = -1;
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const double v = std::stod(rows[i].substr(rows[i].find(',') + 1));
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(Cli, ShiftSinglePointAndErrors) {
  const auto d = scratch("shift_single");
  auto cfg = write_config(d, "[device]\npreset = paper-two-dot\n[sweep]\nfields_kV_cm = 30\n");
  ASSERT_EQ(run("shift", cfg.string(), d).code, 0);
  const auto rows = lines_of(slurp(d / "shift.csv"));
  ASSERT_EQ(rows.size(), 3U);
  const double v = std::stod(rows[2].substr(rows[2].find(',') + 1));
  EXPECT_GE(v, 3.0);
  EXPECT_LE(v, 6.0);

  cfg = write_config(d, "[device]\npreset = paper-two-dot\n[sweep]\nfields_kV_cm =\n");
  auto r = run("shift", cfg.string(), d);
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("[sweep]"), std::string::npos);
  EXPECT_NE(r.err.find(cfg.string()), std::string::npos);

  cfg = write_config(d, "[register]\nenergies_eV = 1.7, 1.71\n[sweep]\nfields_kV_cm = 30\n");
  r = run("shift", cfg.string(), d);
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("[device]"), std::string::npos);
}

TEST(Cli, SpectrumOnPreset) {
  const auto d = scratch("spectrum");
  const auto r = run("spectrum", preset("fig3.cfg"), d);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("biexcitonic_b|a_eV=1.7145"), std::string::npos) << r.out;
  const auto ex = lines_of(slurp(d / "spectrum_excitonic.csv"));
  EXPECT_EQ(ex[1], "energy_eV,intensity");
  EXPECT_EQ(ex.size(), 2U + 701U);
}

TEST(Cli, CompileWritesSequenceAndEcho) {
  const auto d = scratch("compile");
  const auto r = run("compile", preset("fig3.cfg"), d);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines_of(slurp(d / "sequence.csv"));
  ASSERT_EQ(rows.size(), 4U);
  EXPECT_EQ(rows[1], "center_ps,tau_ps,carrier_eV,area_rad,phase_rad");
  EXPECT_NE(slurp(d / "program.txt").find("gate 1: cnot"), std::string::npos);
}

TEST(Cli, CompileErrorNamesGate) {
  const auto d = scratch("compile_err");
  const auto cfg = write_config(d,
                                "[register]\nenergies_eV = 1.70, 1.71\nshifts_meV = a-b:4.5\n"
                                "[pulses]\ntau_ps = 0.6\n[program]\ngate = rotation target=a\n"
                                "gate = cnot target=b control=a start_ps=3\n");
  const auto r = run("compile", cfg.string(), d);
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("gate 1"), std::string::npos) << r.err;
}

TEST(Cli, EmptyProgramGivesConstantTrajectory) {
  const auto d = scratch("empty_program");
  const auto cfg = write_config(d,
                                "[register]\nenergies_eV = 1.70, 1.71\nshifts_meV = a-b:4.5\n"
                                "[program]\n[integration]\nt_end_ps = 1\n[metrics]\ninitial_state = 10\n");
  const auto r = run("simulate", cfg.string(), d);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines_of(slurp(d / "trajectory.csv"));
  ASSERT_GT(rows.size(), 3U);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].substr(rows[i].find(',')), ",0,1,0,0,1,0,0,0");
  }
}

TEST(Cli, PropagationFailureExitsWithThree) {
  const auto d = scratch("diverge");
  const auto cfg = write_config(d,
                                "[register]\nenergies_eV = 1.70\n[program]\ngate = rotation target=a\n"
                                "[channels]\ndecay_per_ps = a:500\n[integration]\nstep_ps = 0.01\n");
  const auto r = run("simulate", cfg.string(), d);
  EXPECT_EQ(r.code, kExitNumerical);
  EXPECT_NE(r.err.find("step"), std::string::npos);
}

TEST(Cli, BinaryExitCodes) {
  const auto d = scratch("binary");
  const std::string exe = EXCITONQ_CLI_PATH;
  const auto ok = std::system((exe + " compile --config " + preset("fig3.cfg") + " --out-dir " +
                               d.string() + " > /dev/null").c_str());
  EXPECT_EQ(WEXITSTATUS(ok), 0);
  const auto usage = std::system((exe + " frobnicate > /dev/null 2>&1").c_str());
  EXPECT_EQ(WEXITSTATUS(usage), kExitUsage);
  const auto missing = std::system((exe + " simulate --config " + (d / "none.cfg").string() +
                                    " > /dev/null 2>&1").c_str());
  EXPECT_EQ(WEXITSTATUS(missing), kExitUsage);
}

}  // namespace
}  // namespace excitonq
