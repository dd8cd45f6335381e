// Copyright 2026 The demon-cycle Authors
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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "demon/qubit.hpp"
#include "demon/trajectory.hpp"

namespace demon {

/// Configuration problem, tagged with the 1-based line it came from
/// (0 when it concerns the file as a whole).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& what);
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class Mode { Discrete, Sweep, Simulate, Pdf, Compare };

[[nodiscard]] std::string_view to_string(Mode m);

struct RunConfig {
  Mode mode = Mode::Discrete;

  double omega0 = 0.1;
  double t_demon = 0.001;
  std::optional<double> z0;

  std::optional<double> kappa;
  std::vector<double> kappa_grid;
  std::vector<double> q_grid;

  double dt_over_tau = 0.01;
  std::size_t n_steps = 15;
  std::size_t n_traj = 20000;
  std::uint64_t master_seed = 42;

  std::optional<std::string> output;
  std::size_t bins = 100;
  std::size_t points = 512;

  [[nodiscard]] EngineParams engine() const;
  [[nodiscard]] ContinuousParams continuous() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parse `key=value` lines; `#` starts a comment. Grids accept a comma list
/// or `start:stop:count`. Unknown keys, duplicates, and out-of-domain values
/// raise ConfigError.
[[nodiscard]] RunConfig parse_config(std::string_view text);

/// Canonical text form; parse_config(to_text(c)) == c.
[[nodiscard]] std::string to_text(const RunConfig& config);

/// Shortest decimal form that reads back to the same double.
[[nodiscard]] std::string format_double(double v);

}  // namespace demon
