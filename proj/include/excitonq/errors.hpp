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
#include <stdexcept>
#include <string>

namespace excitonq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature could not reach the requested tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved_relative_error)
      : Error(what), achieved_(achieved_relative_error) {}
  double achieved_relative_error() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Gate compilation failure. Carries the minimum pulse duration that would
/// satisfy the spectral selectivity budget when that is the cause.
class CompileError : public Error {
 public:
  explicit CompileError(const std::string& what,
                        std::optional<double> required_tau_ps = std::nullopt)
      : Error(what), required_tau_ps_(required_tau_ps) {}
  std::optional<double> required_tau_ps() const noexcept { return required_tau_ps_; }

 private:
  std::optional<double> required_tau_ps_;
};

/// The propagated state left the physical set beyond tolerance.
class PropagationError : public Error {
 public:
  PropagationError(const std::string& what, std::size_t step)
      : Error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class NumericalConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Run-configuration problem; `section()` names the offending section.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& section, const std::string& what)
      : Error("[" + section + "] " + what), section_(section) {}
  const std::string& section() const noexcept { return section_; }

 private:
  std::string section_;
};

}  // namespace excitonq
