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

#include "demon/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <system_error>

namespace demon {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, std::size_t line,
                    std::string_view key) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(line, std::string(key) + ": expected a number, got '" +
                                std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_unsigned(std::string_view text, std::size_t line,
                             std::string_view key) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(line, std::string(key) + ": expected a non-negative integer, got '" +
                                std::string(text) + "'");
  }
  return v;
}

std::vector<double> parse_grid(std::string_view text, std::size_t line,
                               std::string_view key) {
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t pos; (pos = text.find(':', start)) != std::string_view::npos;
         start = pos + 1) {
      parts.push_back(text.substr(start, pos - start));
    }
    parts.push_back(text.substr(start));
    if (parts.size() != 3) {
      throw ConfigError(line, std::string(key) + ": range must be start:stop:count");
    }
    const double a = parse_double(parts[0], line, key);
    const double b = parse_double(parts[1], line, key);
    const auto n = parse_unsigned(parts[2], line, key);
    if (n == 0) throw ConfigError(line, std::string(key) + ": count must be >= 1");
    if (n == 1) return {a};
    for (std::uint64_t i = 0; i < n; ++i) {
      out.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find(',', start);
    const auto item = text.substr(start, pos == std::string_view::npos ? pos : pos - start);
    out.push_back(parse_double(item, line, key));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Mode parse_mode(std::string_view text, std::size_t line) {
  static const std::map<std::string_view, Mode> modes{
      {"discrete", Mode::Discrete}, {"sweep", Mode::Sweep},
      {"simulate", Mode::Simulate}, {"pdf", Mode::Pdf},
      {"compare", Mode::Compare}};
  const auto it = modes.find(trim(text));
  if (it == modes.end()) {
    throw ConfigError(line, "mode: expected one of discrete, sweep, simulate, pdf, compare");
  }
  return it->second;
}

bool in_open_unit(double k) { return k > 0.0 && k < 1.0; }

}  // namespace

ConfigError::ConfigError(std::size_t line, const std::string& what)
    : std::runtime_error(line == 0 ? what
                                   : "line " + std::to_string(line) + ": " + what),
      line_(line) {}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Discrete: return "discrete";
    case Mode::Sweep: return "sweep";
    case Mode::Simulate: return "simulate";
    case Mode::Pdf: return "pdf";
    case Mode::Compare: return "compare";
  }
  return "unknown";
}

EngineParams RunConfig::engine() const {
  return EngineParams(omega0, t_demon, z0);
}

ContinuousParams RunConfig::continuous() const {
  ContinuousParams p;
  p.dt_over_tau = dt_over_tau;
  p.n_steps = n_steps;
  p.n_traj = n_traj;
  p.master_seed = master_seed;
  return p;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::map<std::string, std::size_t> seen;
  std::size_t line_no = 0;

  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line =
        text.substr(start, end == std::string_view::npos ? end : end - start);
    ++line_no;
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, "expected key=value, got '" + std::string(line) + "'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "missing key before '='");
    if (value.empty()) throw ConfigError(line_no, key + ": missing value");
    if (const auto [it, fresh] = seen.emplace(key, line_no); !fresh) {
      throw ConfigError(line_no, key + ": duplicate key (first set on line " +
                                     std::to_string(it->second) + ")");
    }

    if (key == "mode") {
      cfg.mode = parse_mode(value, line_no);
    } else if (key == "omega0") {
      cfg.omega0 = parse_double(value, line_no, key);
      if (!(cfg.omega0 > 0.0)) throw ConfigError(line_no, "omega0 must be > 0");
    } else if (key == "t_demon") {
      cfg.t_demon = parse_double(value, line_no, key);
      if (!(cfg.t_demon >= 0.0)) throw ConfigError(line_no, "t_demon must be >= 0");
    } else if (key == "z0") {
      cfg.z0 = parse_double(value, line_no, key);
      if (!(*cfg.z0 > -1.0 && *cfg.z0 <= 0.0)) {
        throw ConfigError(line_no, "z0 must lie in (-1, 0]");
      }
    } else if (key == "kappa") {
      cfg.kappa = parse_double(value, line_no, key);
      if (!in_open_unit(*cfg.kappa)) {
        throw ConfigError(line_no, "kappa must lie in the open interval (0, 1)");
      }
    } else if (key == "kappa_grid") {
      cfg.kappa_grid = parse_grid(value, line_no, key);
      for (const double k : cfg.kappa_grid) {
        if (!in_open_unit(k)) {
          throw ConfigError(line_no, "kappa_grid: every kappa must lie in (0, 1), got " +
                                         format_double(k));
        }
      }
    } else if (key == "Q_grid") {
      cfg.q_grid = parse_grid(value, line_no, key);
      for (const double q : cfg.q_grid) {
        if (!(q >= 0.0)) {
          throw ConfigError(line_no, "Q_grid: every Q must be >= 0, got " + format_double(q));
        }
      }
    } else if (key == "dt_over_tau") {
      cfg.dt_over_tau = parse_double(value, line_no, key);
      if (!(cfg.dt_over_tau > 0.0)) throw ConfigError(line_no, "dt_over_tau must be > 0");
    } else if (key == "n_steps") {
      cfg.n_steps = parse_unsigned(value, line_no, key);
    } else if (key == "n_traj") {
      cfg.n_traj = parse_unsigned(value, line_no, key);
      if (cfg.n_traj == 0) throw ConfigError(line_no, "n_traj must be >= 1");
    } else if (key == "master_seed") {
      cfg.master_seed = parse_unsigned(value, line_no, key);
    } else if (key == "output") {
      cfg.output = std::string(value);
    } else if (key == "bins") {
      cfg.bins = parse_unsigned(value, line_no, key);
      if (cfg.bins == 0) throw ConfigError(line_no, "bins must be >= 1");
    } else if (key == "points") {
      cfg.points = parse_unsigned(value, line_no, key);
      if (cfg.points < 2) throw ConfigError(line_no, "points must be >= 2");
    } else {
      throw ConfigError(line_no, "unknown key '" + key + "'");
    }
  }

  if (!seen.contains("mode")) throw ConfigError(0, "missing required key 'mode'");
  const auto line_of = [&](const char* k) {
    const auto it = seen.find(k);
    return it == seen.end() ? std::size_t{0} : it->second;
  };
  switch (cfg.mode) {
    case Mode::Discrete:
      if (!cfg.kappa) throw ConfigError(0, "mode=discrete requires 'kappa'");
      break;
    case Mode::Sweep:
      if (cfg.kappa_grid.empty() == cfg.q_grid.empty()) {
        throw ConfigError(line_of("mode"),
                          "mode=sweep requires exactly one of 'kappa_grid' or 'Q_grid'");
      }
      break;
    case Mode::Simulate:
    case Mode::Pdf:
    case Mode::Compare:
      if (cfg.n_steps == 0 && cfg.mode != Mode::Simulate) {
        throw ConfigError(line_of("n_steps"),
                          "n_steps must be >= 1 for analytic distributions");
      }
      break;
  }
  return cfg;
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string to_text(const RunConfig& c) {
  std::ostringstream out;
  auto grid = [](const std::vector<double>& g) {
    std::string s;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (i) s += ',';
      s += format_double(g[i]);
    }
    return s;
  };
  out << "mode=" << to_string(c.mode) << '\n';
  out << "omega0=" << format_double(c.omega0) << '\n';
  out << "t_demon=" << format_double(c.t_demon) << '\n';
  if (c.z0) out << "z0=" << format_double(*c.z0) << '\n';
  if (c.kappa) out << "kappa=" << format_double(*c.kappa) << '\n';
  if (!c.kappa_grid.empty()) out << "kappa_grid=" << grid(c.kappa_grid) << '\n';
  if (!c.q_grid.empty()) out << "Q_grid=" << grid(c.q_grid) << '\n';
  out << "dt_over_tau=" << format_double(c.dt_over_tau) << '\n';
  out << "n_steps=" << c.n_steps << '\n';
  out << "n_traj=" << c.n_traj << '\n';
  out << "master_seed=" << c.master_seed << '\n';
  if (c.output) out << "output=" << *c.output << '\n';
  out << "bins=" << c.bins << '\n';
  out << "points=" << c.points << '\n';
  return out.str();
}

}  // namespace demon
