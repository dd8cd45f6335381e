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

#include "demon/qubit.hpp"

#include <cmath>
#include <numbers>

namespace demon {

double QubitState::length() const { return std::sqrt(length_squared()); }

EngineParams::EngineParams(double omega0, double t_demon,
                           std::optional<double> z0_override)
    : omega0_(omega0), t_demon_(t_demon), z0_override_(z0_override) {
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
    throw DomainError("omega0 must be a finite value > 0");
  }
  if (!(t_demon >= 0.0) || !std::isfinite(t_demon)) {
    throw DomainError("t_demon must be a finite value >= 0");
  }
  if (z0_override && !(*z0_override > -1.0 && *z0_override <= 0.0)) {
    throw DomainError("z0 override must lie in (-1, 0]");
  }
}

double EngineParams::mean_occupation() const {
  return 1.0 / std::expm1(omega0_);
}

double EngineParams::z0() const {
  if (z0_override_) return *z0_override_;
  // -1/(2n+1) rewritten without the overflow in n for large omega0.
  return -std::tanh(0.5 * omega0_);
}

double EngineParams::erasure_work() const {
  return t_demon_ * std::numbers::ln2 / omega0_;
}

std::vector<std::string> EngineParams::warnings() const {
  std::vector<std::string> out;
  if (t_demon_ >= 1.0) {
    out.emplace_back("t_demon >= 1: demon is not much colder than the reservoir");
  }
  return out;
}

KrausResult apply_kraus(const QubitState& s, XKraus m) {
  const double sum = m.a * m.a + m.b * m.b;
  const double cross = 2.0 * m.a * m.b;
  const double diff = m.a * m.a - m.b * m.b;
  const double weight = sum + cross * s.x;
  if (!(weight > kImpossibleWeight)) {
    throw ImpossibleOutcome("measurement outcome has zero probability");
  }
  QubitState out{(sum * s.x + cross) / weight, diff * s.y / weight,
                 diff * s.z / weight};
  return {out, weight};
}

DiscreteMeasurement::DiscreteMeasurement(double kappa) : kappa_(kappa) {
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw DomainError("kappa must lie in the open interval (0, 1)");
  }
  const double sk = std::sqrt(kappa);
  const double sc = std::sqrt(1.0 - kappa);
  a_ = 0.5 * (sk + sc);
  b_ = 0.5 * (sk - sc);
}

DiscreteMeasurement DiscreteMeasurement::from_rate(double rate, double dt) {
  if (!(rate >= 0.0) || !(dt >= 0.0)) {
    throw DomainError("measurement rate and duration must be >= 0");
  }
  return DiscreteMeasurement(0.5 - std::sqrt(2.0 * rate * dt));
}

QubitState thermal_state(const EngineParams& params) {
  return {0.0, 0.0, params.z0()};
}

std::pair<QubitState, double> apply_discrete(const QubitState& state,
                                             const DiscreteMeasurement& m,
                                             Outcome outcome) {
  const auto r = apply_kraus(state, m.kraus(outcome));
  return {r.state, r.probability};
}

double backward_prob(const QubitState& state, const DiscreteMeasurement& m,
                     Outcome outcome) {
  const auto forward = apply_kraus(state, m.kraus(outcome));
  const auto back = apply_kraus(forward.state, m.kraus(opposite(outcome)));
  return back.probability;
}

double arrow_discrete(double kappa) {
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw DomainError("kappa must lie in the open interval (0, 1)");
  }
  return -2.0 * std::numbers::ln2 - std::log(kappa * (1.0 - kappa));
}

double arrow_discrete(const DiscreteMeasurement& m) {
  return arrow_discrete(m.kappa());
}

double kappa_from_arrow(double q) {
  if (!(q >= 0.0) || !std::isfinite(q)) {
    throw DomainError("arrow of time Q must be finite and >= 0");
  }
  // kappa = (1 - sqrt(1 - e^-Q))/2 = (e^-Q / 4) / ((1 + sqrt(1 - e^-Q)) / 2)
  const double e = std::exp(-q);
  const double root = std::sqrt(-std::expm1(-q));
  const double kappa = 0.5 * e / (1.0 + root);
  if (!(kappa > 0.0)) {
    throw DomainError("Q too large: kappa underflows to zero");
  }
  return kappa;
}

std::pair<QubitState, double> feedback_rotate(const QubitState& s) {
  const double r = std::hypot(s.x, s.z);
  if (r == 0.0) return {s, 0.0};
  const double theta = std::atan2(s.x, -s.z);
  return {QubitState{0.0, s.y, -r}, theta};
}

double energy(const QubitState& state) { return 0.5 * (1.0 + state.z); }

double entropy_of_length(double r) {
  r = std::fabs(r);
  if (r >= 1.0) return 0.0;
  const double hi = 0.5 * (1.0 + r);
  const double lo = 0.5 * (1.0 - r);
  // log1p keeps the small-r branch accurate.
  return -hi * std::log1p(r) - lo * std::log1p(-r) + std::numbers::ln2;
}

double von_neumann_entropy(const QubitState& state) {
  return entropy_of_length(state.length());
}

double linear_entropy(const QubitState& state) {
  return 1.0 - state.length_squared();
}

}  // namespace demon
