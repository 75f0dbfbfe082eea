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

#include "excitonq/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "excitonq/csv.hpp"
#include "excitonq/errors.hpp"

namespace excitonq {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back({});
  return out;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool try_number(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  const char* first = t.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size() && std::isfinite(out);
}

// Accessor over one section that records which keys were consumed.
class Reader {
 public:
  Reader(const ConfigFile& file, const std::string& name)
      : name_(name), section_(file.section(name)) {}

  bool present() const { return section_ != nullptr; }

  std::optional<std::string> text(const std::string& key) {
    if (!section_) return std::nullopt;
    used_.insert(key);
    const auto all = section_->find_all(key);
    if (all.empty()) return std::nullopt;
    if (all.size() > 1) fail("key '" + key + "' given more than once");
    return all.front()->value;
  }

  std::vector<std::string> texts(const std::string& key) {
    std::vector<std::string> out;
    if (!section_) return out;
    used_.insert(key);
    for (const auto* e : section_->find_all(key)) out.push_back(e->value);
    return out;
  }

  std::optional<double> number(const std::string& key) {
    auto t = text(key);
    if (!t) return std::nullopt;
    double v = 0.0;
    if (!try_number(*t, v)) fail("'" + key + "' is not a number: " + *t);
    return v;
  }

  std::optional<double> angle(const std::string& key) {
    auto t = text(key);
    if (!t) return std::nullopt;
    try {
      return parse_angle(*t);
    } catch (const Error& e) {
      fail("'" + key + "': " + e.what());
    }
  }

  std::optional<std::vector<double>> numbers(const std::string& key) {
    auto t = text(key);
    if (!t) return std::nullopt;
    std::vector<double> out;
    if (trim(*t).empty()) return out;
    for (const auto& item : split(*t, ',')) {
      double v = 0.0;
      if (!try_number(item, v)) fail("'" + key + "' has a non-numeric entry: '" + item + "'");
      out.push_back(v);
    }
    return out;
  }

  std::optional<std::size_t> count(const std::string& key) {
    auto v = number(key);
    if (!v) return std::nullopt;
    if (*v < 0 || std::floor(*v) != *v) fail("'" + key + "' must be a non-negative integer");
    return static_cast<std::size_t>(*v);
  }

  void finish() const {
    if (!section_) return;
    for (const auto& e : section_->entries) {
      if (!used_.count(e.key)) {
        fail("unknown key '" + e.key + "' (line " + std::to_string(e.line) + ")");
      }
    }
  }

  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(name_, what); }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  const ConfigSection* section_;
  std::set<std::string> used_;
};

std::size_t dot_in(const Reader& r, const std::string& text, std::size_t n) {
  std::size_t d = 0;
  try {
    d = parse_dot(text);
  } catch (const Error& e) {
    r.fail(e.what());
  }
  if (d >= n) {
    r.fail("dot '" + text + "' out of range for " + std::to_string(n) + " dots");
  }
  return d;
}

std::vector<double> broadcast(const Reader& r, const std::string& key, std::vector<double> v,
                              std::size_t n) {
  if (v.size() == 1 && n > 1) v.assign(n, v.front());
  if (v.size() != n) {
    r.fail("'" + key + "' needs " + std::to_string(n) + " entries, got " +
           std::to_string(v.size()));
  }
  return v;
}

const std::set<std::string> kSections = {"device",   "register", "program", "pulses",
                                         "channels", "integration", "metrics", "outputs",
                                         "sweep",    "spectrum"};

void parse_device(const ConfigFile& file, RunConfig& cfg) {
  Reader r(file, "device");
  if (!r.present()) return;
  const std::string preset = r.text("preset").value_or("");
  DeviceStructure base;
  if (preset == "paper-two-dot") {
    base = paper_two_dot_preset();
  } else if (!preset.empty()) {
    r.fail("unknown preset '" + preset + "'");
  }
  cfg.device_preset = preset;

  MaterialParams mat = base.material;
  mat.electron_mass = r.number("electron_mass").value_or(mat.electron_mass);
  mat.hole_mass = r.number("hole_mass").value_or(mat.hole_mass);
  mat.relative_permittivity = r.number("permittivity").value_or(mat.relative_permittivity);
  mat.band_gap_ev = r.number("band_gap_eV").value_or(mat.band_gap_ev);
  const double field = r.number("field_kV_cm").value_or(base.field_kv_cm);
  const double z_origin =
      r.number("z_origin_nm").value_or(base.dots.empty() ? 0.0 : base.dots.front().z_center_nm);

  auto hw_e = r.numbers("hw_e_meV");
  auto hw_h = r.numbers("hw_h_meV");
  auto widths = r.numbers("well_width_nm");
  auto barriers = r.numbers("barrier_nm");
  auto n_dots = r.count("dots");

  std::size_t n = base.size();
  if (n_dots) n = *n_dots;
  for (const auto* v : {&hw_e, &hw_h, &widths}) {
    if (*v && (*v)->size() > 1 && !n_dots) n = (*v)->size();
  }
  if (n == 0) r.fail("number of dots unknown: set 'dots', a preset, or per-dot lists");
  if (n > basis::kMaxQubits) r.fail("at most " + std::to_string(basis::kMaxQubits) + " dots");

  std::vector<double> def_e, def_h, def_w;
  for (std::size_t i = 0; i < n; ++i) {
    const DotGeometry g = i < base.size() ? base.dots[i] : DotGeometry{};
    def_e.push_back(g.confinement_electron_mev);
    def_h.push_back(g.confinement_hole_mev);
    def_w.push_back(g.well_width_nm);
  }
  std::vector<double> def_b = base.barrier_widths_nm;
  def_b.resize(n - 1, def_b.empty() ? 5.0 : def_b.back());

  const auto e = broadcast(r, "hw_e_meV", hw_e.value_or(def_e), n);
  const auto h = broadcast(r, "hw_h_meV", hw_h.value_or(def_h), n);
  const auto w = broadcast(r, "well_width_nm", widths.value_or(def_w), n);
  std::vector<double> b = barriers.value_or(def_b);
  if (n == 1) {
    if (!b.empty() && barriers && b.size() != 1) r.fail("'barrier_nm' unused for one dot");
    b.clear();
  } else {
    b = broadcast(r, "barrier_nm", b, n - 1);
  }
  r.finish();

  std::vector<DotGeometry> dots(n);
  for (std::size_t i = 0; i < n; ++i) {
    dots[i].confinement_electron_mev = e[i];
    dots[i].confinement_hole_mev = h[i];
    dots[i].well_width_nm = w[i];
  }
  try {
    cfg.device = stack_dots(std::move(dots), std::move(b), mat, field, z_origin);
  } catch (const InvalidParameter& ex) {
    r.fail(ex.what());
  }
}

// "a-b:4.5, a-c:1.0"
Eigen::MatrixXd parse_shifts(const Reader& r, const std::string& text, std::size_t n) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  if (trim(text).empty()) return m;
  for (const auto& item : split(text, ',')) {
    const auto colon = item.find(':');
    const auto dash = item.find('-');
    if (colon == std::string::npos || dash == std::string::npos || dash > colon) {
      r.fail("shift entry '" + item + "' must look like a-b:4.5");
    }
    const std::size_t i = dot_in(r, trim(item.substr(0, dash)), n);
    const std::size_t j = dot_in(r, trim(item.substr(dash + 1, colon - dash - 1)), n);
    if (i == j) r.fail("shift entry '" + item + "' couples a dot to itself");
    double v = 0.0;
    if (!try_number(item.substr(colon + 1), v)) r.fail("shift entry '" + item + "' has no value");
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
  }
  return m;
}

void parse_register(const ConfigFile& file, RunConfig& cfg) {
  Reader r(file, "register");
  if (!r.present()) return;
  auto energies = r.numbers("energies_eV");
  auto shifts = r.text("shifts_meV");
  auto dipoles = r.numbers("dipoles");
  r.finish();
  if (energies) {
    if (cfg.device) r.fail("explicit energies conflict with the [device] section; give one source");
    if (energies->empty()) r.fail("'energies_eV' is empty");
    if (energies->size() > basis::kMaxQubits) r.fail("too many dots");
    std::vector<double> mev;
    for (double e : *energies) mev.push_back(units::ev_to_mev(e));
    cfg.register_energies_mev = mev;
    cfg.register_shifts_mev = parse_shifts(r, shifts.value_or(""), mev.size());
  } else if (shifts) {
    r.fail("'shifts_meV' needs 'energies_eV'");
  }
  if (dipoles) cfg.dipoles = *dipoles;
}

void parse_pulses(const ConfigFile& file, RunConfig& cfg) {
  Reader r(file, "pulses");
  if (!r.present()) return;
  TimingPolicy& p = cfg.timing;
  p.tau_ps = r.number("tau_ps").value_or(p.tau_ps);
  p.spacing_tau = r.number("spacing_tau").value_or(p.spacing_tau);
  p.selectivity_fraction = r.number("selectivity_fraction").value_or(p.selectivity_fraction);
  p.phase_rad = r.angle("phase_rad").value_or(p.phase_rad);
  if (auto a = r.text("addressing")) {
    if (*a == "global") {
      p.addressing = Addressing::Global;
    } else if (*a == "local") {
      p.addressing = Addressing::Local;
    } else {
      r.fail("addressing must be 'global' or 'local'");
    }
  }
  if (auto d = r.numbers("dipoles")) {
    if (cfg.dipoles) r.fail("dipoles given in both [register] and [pulses]");
    cfg.dipoles = *d;
  }
  r.finish();
  try {
    p.validate();
  } catch (const InvalidParameter& e) {
    r.fail(e.what());
  }
}

GateSpec parse_gate(const Reader& r, const std::string& line, std::size_t index, std::size_t n) {
  const std::string where = "gate " + std::to_string(index) + ": ";
  const auto toks = split_ws(line);
  if (toks.empty()) r.fail(where + "empty gate entry");
  GateSpec g;
  try {
    g.kind = gate_kind_from_string(toks[0]);
  } catch (const Error& e) {
    r.fail(where + e.what());
  }
  g.angle_rad = g.kind == GateKind::Rotation || g.kind == GateKind::ConditionalRotation
                    ? units::kPi / 2
                    : units::kPi;
  bool have_target = false;
  for (std::size_t i = 1; i < toks.size(); ++i) {
    const auto eq = toks[i].find('=');
    if (eq == std::string::npos) r.fail(where + "expected key=value, got '" + toks[i] + "'");
    const std::string key = toks[i].substr(0, eq);
    const std::string val = toks[i].substr(eq + 1);
    try {
      if (key == "target") {
        g.target = dot_in(r, val, n);
        have_target = true;
      } else if (key == "angle_rad") {
        g.angle_rad = parse_angle(val);
      } else if (key == "control") {
        g.conditions.push_back({dot_in(r, val, n), 1});
      } else if (key == "if") {
        for (const auto& c : split(val, ',')) {
          const auto colon = c.find(':');
          if (colon == std::string::npos) r.fail(where + "condition '" + c + "' must be dot:0|1");
          const std::string occ = c.substr(colon + 1);
          if (occ != "0" && occ != "1") r.fail(where + "condition '" + c + "' must be dot:0|1");
          g.conditions.push_back({dot_in(r, c.substr(0, colon), n), occ == "1" ? 1 : 0});
        }
      } else if (key == "start_ps") {
        if (val != "auto") {
          double v = 0.0;
          if (!try_number(val, v)) r.fail(where + "start_ps must be a number or auto");
          g.start_ps = v;
        }
      } else {
        r.fail(where + "unknown gate field '" + key + "'");
      }
    } catch (const ConfigError& e) {
      if (std::string(e.what()).find("gate ") != std::string::npos) throw;
      r.fail(where + std::string(e.what()).substr(e.section().size() + 3));
    } catch (const Error& e) {
      r.fail(where + e.what());
    }
  }
  if (!have_target) r.fail(where + "missing target");
  try {
    g.validate(n);
  } catch (const Error& e) {
    r.fail(where + e.what());
  }
  return g;
}

void parse_program(const ConfigFile& file, RunConfig& cfg, std::size_t n) {
  Reader r(file, "program");
  if (!r.present()) return;
  cfg.has_program = true;
  const auto lines = r.texts("gate");
  r.finish();
  for (std::size_t i = 0; i < lines.size(); ++i) cfg.program.push_back(parse_gate(r, lines[i], i, n));
}

void parse_channels(const ConfigFile& file, RunConfig& cfg, std::size_t n) {
  Reader r(file, "channels");
  if (!r.present()) return;
  auto read = [&](const std::string& key, ChannelKind kind) {
    const auto t = r.text(key);
    if (!t || trim(*t).empty()) return;
    for (const auto& item : split(*t, ',')) {
      const auto colon = item.find(':');
      double rate = 0.0;
      if (colon == std::string::npos || !try_number(item.substr(colon + 1), rate)) {
        r.fail("'" + key + "' entry '" + item + "' must look like a:0.002");
      }
      LindbladChannel ch{kind, dot_in(r, trim(item.substr(0, colon)), n), rate};
      try {
        ch.validate(n);
      } catch (const Error& e) {
        r.fail(e.what());
      }
      cfg.channels.push_back(ch);
    }
  };
  read("decay_per_ps", ChannelKind::Decay);
  read("dephasing_per_ps", ChannelKind::PureDephasing);
  r.finish();
}

void parse_integration(const ConfigFile& file, RunConfig& cfg) {
  Reader r(file, "integration");
  if (!r.present()) return;
  cfg.has_integration = true;
  SimulationConfig& s = cfg.integration;
  s.step_ps = r.number("step_ps").value_or(s.step_ps);
  if (auto f = r.text("frame")) {
    if (*f == "rotating") {
      s.frame = Frame::Rotating;
    } else if (*f == "lab") {
      s.frame = Frame::Lab;
    } else {
      r.fail("frame must be 'rotating' or 'lab'");
    }
  }
  if (auto o = r.count("integrator_order")) s.integrator_order = static_cast<int>(*o);
  s.sample_stride = r.count("sample_stride").value_or(s.sample_stride);
  if (auto ref = r.number("reference_eV")) s.reference_mev = units::ev_to_mev(*ref);
  if (auto t = r.number("t_start_ps")) s.t_start_ps = *t;
  if (auto t = r.number("t_end_ps")) s.t_end_ps = *t;
  s.trace_tolerance = r.number("trace_tolerance").value_or(s.trace_tolerance);
  s.positivity_tolerance = r.number("positivity_tolerance").value_or(s.positivity_tolerance);
  r.finish();
  if (!(s.step_ps > 0)) r.fail("step_ps must be positive");
  if (s.sample_stride == 0) r.fail("sample_stride must be at least 1");
  if (s.integrator_order != 4) r.fail("only integrator_order = 4 is supported");
  if (!(s.trace_tolerance > 0) || !(s.positivity_tolerance > 0)) {
    r.fail("tolerances must be positive");
  }
}

void parse_metrics(const ConfigFile& file, RunConfig& cfg, std::size_t n) {
  Reader r(file, "metrics");
  if (!r.present()) return;
  const auto init = r.text("initial_state");
  const auto target = r.text("target_state");
  r.finish();
  if (init) {
    const std::string s = trim(*init);
    if (s.size() != n || s.find_first_not_of("01") != std::string::npos) {
      r.fail("initial_state must be a " + std::to_string(n) + "-character bit string");
    }
    cfg.metrics.initial_state = basis::index_of_label(s);
  }
  if (target) {
    try {
      cfg.metrics.target_state = parse_state(*target, n);
    } catch (const Error& e) {
      r.fail(std::string("target_state: ") + e.what());
    }
    cfg.metrics.target_label = trim(*target);
  }
}

void parse_outputs(const ConfigFile& file, RunConfig& cfg) {
  Reader r(file, "outputs");
  if (!r.present()) return;
  OutputSettings& o = cfg.outputs;
  for (auto [key, dst] : std::initializer_list<std::pair<const char*, std::string*>>{
           {"trajectory", &o.trajectory},
           {"summary", &o.summary},
           {"manifest", &o.manifest},
           {"sequence", &o.sequence},
           {"program", &o.program},
           {"shift", &o.shift},
           {"spectrum_prefix", &o.spectrum_prefix}}) {
    if (auto v = r.text(key)) {
      const std::string t = trim(*v);
      if (t.empty() || t.find('/') != std::string::npos || t.find("..") != std::string::npos) {
        r.fail(std::string("'") + key + "' must be a plain file name");
      }
      *dst = t;
    }
  }
  if (auto stride = r.count("stride")) {
    if (*stride == 0) r.fail("stride must be at least 1");
    cfg.integration.sample_stride = *stride;
  }
  r.finish();
}

void parse_sweep(const ConfigFile& file, RunConfig& cfg, std::size_t n) {
  Reader r(file, "sweep");
  if (!r.present()) return;
  cfg.has_sweep = true;
  auto list = r.numbers("fields_kV_cm");
  auto range = r.text("field_range_kV_cm");
  auto pair = r.text("pair");
  r.finish();
  if (list && range) r.fail("give either 'fields_kV_cm' or 'field_range_kV_cm'");
  if (list) cfg.sweep.fields_kv_cm = *list;
  if (range) {
    const auto parts = split(*range, ':');
    double a = 0, b = 0, step = 0;
    if (parts.size() != 3 || !try_number(parts[0], a) || !try_number(parts[1], b) ||
        !try_number(parts[2], step) || !(step > 0) || b < a) {
      r.fail("field_range_kV_cm must be start:stop:step with step > 0 and stop >= start");
    }
    const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
      cfg.sweep.fields_kv_cm.push_back(a + static_cast<double>(i) * step);
    }
  }
  if (pair) {
    const auto parts = split(*pair, ',');
    if (parts.size() != 2) r.fail("pair must name two dots, e.g. a,b");
    cfg.sweep.dot_l = dot_in(r, parts[0], n);
    cfg.sweep.dot_lp = dot_in(r, parts[1], n);
    if (cfg.sweep.dot_l == cfg.sweep.dot_lp) r.fail("pair must name two different dots");
  } else if (n < 2) {
    r.fail("a shift sweep needs at least two dots");
  }
}

void parse_spectrum(const ConfigFile& file, RunConfig& cfg, std::size_t n) {
  Reader r(file, "spectrum");
  if (!r.present()) return;
  SpectrumSettings& s = cfg.spectrum;
  s.energy_min_ev = r.number("energy_min_eV").value_or(s.energy_min_ev);
  s.energy_max_ev = r.number("energy_max_eV").value_or(s.energy_max_ev);
  s.energy_step_ev = r.number("energy_step_eV").value_or(s.energy_step_ev);
  s.linewidth_mev = r.number("linewidth_meV").value_or(s.linewidth_mev);
  const auto cond = r.text("conditioning");
  r.finish();
  if (!(s.energy_step_ev > 0) || s.energy_max_ev < s.energy_min_ev) {
    r.fail("energy grid needs energy_step_eV > 0 and energy_max_eV >= energy_min_eV");
  }
  if (!(s.linewidth_mev > 0)) r.fail("linewidth_meV must be positive");
  if (cond && !trim(*cond).empty()) {
    // "a|b" : dot a absorbs with b occupied; "a|b+c" for several.
    for (const auto& item : split(*cond, ',')) {
      const auto bar = item.find('|');
      if (bar == std::string::npos) r.fail("conditioning '" + item + "' must look like a|b");
      Conditioning c;
      c.dot = dot_in(r, trim(item.substr(0, bar)), n);
      c.occupations.assign(n, 0);
      for (const auto& occ : split(item.substr(bar + 1), '+')) {
        const std::size_t d = dot_in(r, occ, n);
        if (d == c.dot) {
          r.fail("conditioning '" + item + "' occupies the absorbing dot " + basis::dot_name(d));
        }
        c.occupations[d] = 1;
      }
      s.conditioning.push_back(c);
    }
  }
}

std::string fmt(double v) { return format_number(v); }

std::string join(const std::vector<double>& v, double scale = 1.0) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt(v[i] * scale);
  }
  return out;
}

}  // namespace

const ConfigEntry* ConfigSection::find(const std::string& key) const {
  for (const auto& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

std::vector<const ConfigEntry*> ConfigSection::find_all(const std::string& key) const {
  std::vector<const ConfigEntry*> out;
  for (const auto& e : entries) {
    if (e.key == key) out.push_back(&e);
  }
  return out;
}

ConfigFile ConfigFile::parse(const std::string& text, const std::string& origin) {
  ConfigFile f;
  f.origin_ = origin;
  f.text_ = text;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config", "line " + std::to_string(line_no) + ": malformed section header");
      }
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (!kSections.count(name)) {
        throw ConfigError(name, "unknown section (line " + std::to_string(line_no) + ")");
      }
      if (f.section(name)) {
        throw ConfigError(name, "section repeated (line " + std::to_string(line_no) + ")");
      }
      f.sections_.push_back({name, {}, line_no});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(f.sections_.empty() ? "config" : f.sections_.back().name,
                        "line " + std::to_string(line_no) + ": expected key = value");
    }
    if (f.sections_.empty()) {
      throw ConfigError("config", "line " + std::to_string(line_no) + ": entry outside any section");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) {
      throw ConfigError(f.sections_.back().name, "line " + std::to_string(line_no) + ": empty key");
    }
    f.sections_.back().entries.push_back({key, trim(line.substr(eq + 1)), line_no});
  }
  return f;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

const ConfigSection* ConfigFile::section(const std::string& name) const {
  for (const auto& s : sections_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::vector<double> SpectrumSettings::grid() const {
  std::vector<double> g;
  const auto count =
      static_cast<std::size_t>(std::floor((energy_max_ev - energy_min_ev) / energy_step_ev + 1e-9)) + 1;
  g.reserve(count);
  for (std::size_t i = 0; i < count; ++i) g.push_back(energy_min_ev + static_cast<double>(i) * energy_step_ev);
  return g;
}

std::size_t RunConfig::n_dots() const {
  if (device) return device->size();
  if (register_energies_mev) return register_energies_mev->size();
  return 0;
}

ExcitonRegister RunConfig::resolve_register() const {
  const std::size_t n = n_dots();
  if (n == 0) throw ConfigError("register", "no register source: add [device] or [register] energies_eV");
  std::vector<double> mu = dipoles.value_or(std::vector<double>(n, kDefaultTransitionDipole));
  if (mu.size() == 1 && n > 1) mu.assign(n, mu.front());
  if (mu.size() != n) {
    throw ConfigError(dipoles ? "pulses" : "register",
                      "dipoles needs " + std::to_string(n) + " entries");
  }
  try {
    if (device) return make_register(*device, mu);
    return ExcitonRegister(*register_energies_mev, register_shifts_mev, mu);
  } catch (const InvalidParameter& e) {
    throw ConfigError(device ? "device" : "register", e.what());
  }
}

RunConfig parse_run_config(const ConfigFile& file) {
  RunConfig cfg;
  cfg.source = file.origin();
  parse_device(file, cfg);
  parse_register(file, cfg);
  const std::size_t n = cfg.n_dots();
  if (n == 0) {
    for (const char* s : {"program", "channels", "metrics", "sweep", "spectrum"}) {
      if (file.has(s)) {
        throw ConfigError("register", "no register source: add [device] or [register] energies_eV");
      }
    }
  }
  parse_pulses(file, cfg);
  parse_program(file, cfg, n);
  parse_channels(file, cfg, n);
  parse_integration(file, cfg);
  parse_metrics(file, cfg, n);
  parse_outputs(file, cfg);
  parse_sweep(file, cfg, n);
  parse_spectrum(file, cfg, n);
  if (cfg.dipoles && n > 0 && cfg.dipoles->size() != 1 && cfg.dipoles->size() != n) {
    throw ConfigError("pulses", "dipoles needs " + std::to_string(n) + " entries");
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) { return parse_run_config(ConfigFile::load(path)); }

std::string to_config_text(const RunConfig& c) {
  std::ostringstream o;
  const std::size_t n = c.n_dots();
  auto dot = [](std::size_t d) { return basis::dot_name(d); };
  if (c.device) {
    const auto& d = *c.device;
    std::vector<double> e, h, w;
    for (const auto& g : d.dots) {
      e.push_back(g.confinement_electron_mev);
      h.push_back(g.confinement_hole_mev);
      w.push_back(g.well_width_nm);
    }
    o << "[device]\n"
      << "dots = " << d.size() << "\n"
      << "field_kV_cm = " << fmt(d.field_kv_cm) << "\n"
      << "electron_mass = " << fmt(d.material.electron_mass) << "\n"
      << "hole_mass = " << fmt(d.material.hole_mass) << "\n"
      << "permittivity = " << fmt(d.material.relative_permittivity) << "\n"
      << "band_gap_eV = " << fmt(d.material.band_gap_ev) << "\n"
      << "hw_e_meV = " << join(e) << "\n"
      << "hw_h_meV = " << join(h) << "\n"
      << "well_width_nm = " << join(w) << "\n";
    if (!d.barrier_widths_nm.empty()) o << "barrier_nm = " << join(d.barrier_widths_nm) << "\n";
    o << "z_origin_nm = " << fmt(d.dots.front().z_center_nm) << "\n\n";
  }
  if (c.register_energies_mev) {
    o << "[register]\n"
      << "energies_eV = " << join(*c.register_energies_mev, 1.0 / units::kMeVPerEv) << "\n";
    std::string shifts;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = c.register_shifts_mev(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (v == 0.0) continue;
        if (!shifts.empty()) shifts += ", ";
        shifts += dot(i) + "-" + dot(j) + ":" + fmt(v);
      }
    }
    o << "shifts_meV = " << shifts << "\n\n";
  }
  const auto& p = c.timing;
  o << "[pulses]\n"
    << "tau_ps = " << fmt(p.tau_ps) << "\n"
    << "spacing_tau = " << fmt(p.spacing_tau) << "\n"
    << "selectivity_fraction = " << fmt(p.selectivity_fraction) << "\n"
    << "phase_rad = " << fmt(p.phase_rad) << "\n"
    << "addressing = " << (p.addressing == Addressing::Global ? "global" : "local") << "\n";
  if (n > 0) {
    std::vector<double> mu = c.dipoles.value_or(std::vector<double>(n, kDefaultTransitionDipole));
    if (mu.size() == 1) mu.assign(n, mu.front());
    o << "dipoles = " << join(mu) << "\n";
  }
  o << "\n";
  if (c.has_program) {
    o << "[program]\n";
    for (const auto& g : c.program) {
      o << "gate = " << to_string(g.kind) << " target=" << dot(g.target)
        << " angle_rad=" << fmt(g.angle_rad);
      if (!g.conditions.empty()) {
        o << " if=";
        for (std::size_t i = 0; i < g.conditions.size(); ++i) {
          o << (i ? "," : "") << dot(g.conditions[i].dot) << ":" << g.conditions[i].occupation;
        }
      }
      o << " start_ps=" << (g.start_ps ? fmt(*g.start_ps) : std::string("auto")) << "\n";
    }
    o << "\n";
  }
  if (!c.channels.empty()) {
    std::string decay, deph;
    for (const auto& ch : c.channels) {
      std::string& dst = ch.kind == ChannelKind::Decay ? decay : deph;
      if (!dst.empty()) dst += ", ";
      dst += dot(ch.dot) + ":" + fmt(ch.rate_per_ps);
    }
    o << "[channels]\n";
    if (!decay.empty()) o << "decay_per_ps = " << decay << "\n";
    if (!deph.empty()) o << "dephasing_per_ps = " << deph << "\n";
    o << "\n";
  }
  if (c.has_integration) {
    const auto& s = c.integration;
    o << "[integration]\n"
      << "step_ps = " << fmt(s.step_ps) << "\n"
      << "frame = " << (s.frame == Frame::Rotating ? "rotating" : "lab") << "\n"
      << "integrator_order = " << s.integrator_order << "\n"
      << "sample_stride = " << s.sample_stride << "\n";
    if (s.reference_mev) o << "reference_eV = " << fmt(*s.reference_mev / units::kMeVPerEv) << "\n";
    if (s.t_start_ps) o << "t_start_ps = " << fmt(*s.t_start_ps) << "\n";
    if (s.t_end_ps) o << "t_end_ps = " << fmt(*s.t_end_ps) << "\n";
    o << "trace_tolerance = " << fmt(s.trace_tolerance) << "\n"
      << "positivity_tolerance = " << fmt(s.positivity_tolerance) << "\n\n";
  }
  if (n > 0) {
    o << "[metrics]\n"
      << "initial_state = " << basis::label(c.metrics.initial_state, n) << "\n";
    if (c.metrics.target_label) o << "target_state = " << *c.metrics.target_label << "\n";
    o << "\n";
  }
  if (c.has_sweep) {
    o << "[sweep]\n"
      << "fields_kV_cm = " << join(c.sweep.fields_kv_cm) << "\n"
      << "pair = " << dot(c.sweep.dot_l) << "," << dot(c.sweep.dot_lp) << "\n\n";
  }
  if (n > 0) {
    const auto& s = c.spectrum;
    o << "[spectrum]\n"
      << "energy_min_eV = " << fmt(s.energy_min_ev) << "\n"
      << "energy_max_eV = " << fmt(s.energy_max_ev) << "\n"
      << "energy_step_eV = " << fmt(s.energy_step_ev) << "\n"
      << "linewidth_meV = " << fmt(s.linewidth_mev) << "\n";
    if (!s.conditioning.empty()) {
      o << "conditioning = ";
      for (std::size_t i = 0; i < s.conditioning.size(); ++i) {
        const auto& cd = s.conditioning[i];
        o << (i ? ", " : "") << dot(cd.dot) << "|";
        bool first = true;
        for (std::size_t k = 0; k < cd.occupations.size(); ++k) {
          if (!cd.occupations[k]) continue;
          o << (first ? "" : "+") << dot(k);
          first = false;
        }
      }
      o << "\n";
    }
    o << "\n";
  }
  const auto& out = c.outputs;
  o << "[outputs]\n"
    << "trajectory = " << out.trajectory << "\n"
    << "summary = " << out.summary << "\n"
    << "manifest = " << out.manifest << "\n"
    << "sequence = " << out.sequence << "\n"
    << "program = " << out.program << "\n"
    << "shift = " << out.shift << "\n"
    << "spectrum_prefix = " << out.spectrum_prefix << "\n";
  return o.str();
}

double parse_angle(const std::string& text) {
  std::string t;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t') t += ch;
  }
  double v = 0.0;
  if (try_number(t, v)) return v;
  const auto pi = t.find("pi");
  if (pi == std::string::npos) throw InvalidParameter("cannot parse angle '" + text + "'");
  double num = 1.0, den = 1.0;
  std::string pre = t.substr(0, pi);
  if (!pre.empty() && pre.back() == '*') pre.pop_back();
  if (pre == "-") {
    num = -1.0;
  } else if (!pre.empty() && !try_number(pre, num)) {
    throw InvalidParameter("cannot parse angle '" + text + "'");
  }
  const std::string post = t.substr(pi + 2);
  if (!post.empty()) {
    if (post.front() != '/' || !try_number(post.substr(1), den) || den == 0.0) {
      throw InvalidParameter("cannot parse angle '" + text + "'");
    }
  }
  return num * units::kPi / den;
}

ComplexVector parse_state(const std::string& text, std::size_t n_qubits) {
  ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(basis::dimension(n_qubits)));
  std::string t;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t') t += ch;
  }
  if (t.empty()) throw InvalidParameter("empty state");
  std::size_t pos = 0;
  while (pos < t.size()) {
    double sign = 1.0;
    if (t[pos] == '+' || t[pos] == '-') {
      sign = t[pos] == '-' ? -1.0 : 1.0;
      ++pos;
    }
    const auto next = t.find_first_of("+-", pos);
    std::string term = t.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    // Exponent signs ("1e-3*00") belong to the coefficient.
    std::size_t end = next;
    while (end != std::string::npos && end > 0 && (t[end - 1] == 'e' || t[end - 1] == 'E')) {
      end = t.find_first_of("+-", end + 1);
      term = t.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    }
    double coef = 1.0;
    std::string bits = term;
    const auto star = term.find('*');
    if (star != std::string::npos) {
      if (!try_number(term.substr(0, star), coef)) {
        throw InvalidParameter("bad coefficient in '" + term + "'");
      }
      bits = term.substr(star + 1);
    }
    if (bits.size() != n_qubits || bits.find_first_not_of("01") != std::string::npos) {
      throw InvalidParameter("'" + bits + "' is not a " + std::to_string(n_qubits) + "-qubit bit string");
    }
    psi(static_cast<Eigen::Index>(basis::index_of_label(bits))) += sign * coef;
    pos = end == std::string::npos ? t.size() : end;
  }
  const double norm = psi.norm();
  if (!(norm > 0)) throw InvalidParameter("state has zero norm");
  return psi / norm;
}

std::size_t parse_dot(const std::string& text) {
  const std::string t = trim(text);
  if (t.size() == 1 && t[0] >= 'a' && t[0] <= 'z') return static_cast<std::size_t>(t[0] - 'a');
  double v = 0.0;
  if (try_number(t, v) && v >= 0 && std::floor(v) == v) return static_cast<std::size_t>(v);
  throw InvalidParameter("'" + text + "' is not a dot name");
}

}  // namespace excitonq
