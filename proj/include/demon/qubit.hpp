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

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace demon {

/// Raised when a parameter leaves its physical domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a measurement outcome has vanishing probability.
class ImpossibleOutcome : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bloch-vector form of a qubit density matrix,
/// rho = (I + x sx + y sy + z sz) / 2.
struct QubitState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  [[nodiscard]] double length() const;
  [[nodiscard]] double length_squared() const { return x * x + y * y + z * z; }
  [[nodiscard]] bool is_physical(double tol = 1e-12) const {
    return length_squared() <= 1.0 + tol;
  }

  friend bool operator==(const QubitState&, const QubitState&) = default;
};

/// Reservoir and demon settings in dimensionless units: omega0 is
/// hbar*omega0 / (k_B T), t_demon is T_D / T.
class EngineParams {
 public:
  EngineParams(double omega0, double t_demon,
               std::optional<double> z0_override = std::nullopt);

  [[nodiscard]] double omega0() const { return omega0_; }
  [[nodiscard]] double t_demon() const { return t_demon_; }
  [[nodiscard]] const std::optional<double>& z0_override() const {
    return z0_override_;
  }

  /// Thermal occupation 1 / (e^omega0 - 1).
  [[nodiscard]] double mean_occupation() const;

  /// Initial Bloch z; the override wins when present.
  [[nodiscard]] double z0() const;

  /// Landauer erasure cost k_B T_D ln 2 expressed in units of hbar*omega0.
  [[nodiscard]] double erasure_work() const;

  /// Non-fatal parameter warnings (e.g. demon not much colder than the bath).
  [[nodiscard]] std::vector<std::string> warnings() const;

  friend bool operator==(const EngineParams&, const EngineParams&) = default;

 private:
  double omega0_;
  double t_demon_;
  std::optional<double> z0_override_;
};

enum class Outcome { Plus, Minus };

[[nodiscard]] constexpr Outcome opposite(Outcome o) {
  return o == Outcome::Plus ? Outcome::Minus : Outcome::Plus;
}

/// A Kraus operator of the form a*I + b*sigma_x with real a, b. Every
/// measurement in this library is of this type, which keeps the update
/// closed in Bloch coordinates.
struct XKraus {
  double a = 1.0;
  double b = 0.0;
};

/// Result of applying an XKraus: normalized post-state and tr(M rho M^dag).
struct KrausResult {
  QubitState state;
  double probability = 0.0;
};

/// Unnormalized weight threshold below which an outcome is treated as impossible.
inline constexpr double kImpossibleWeight = 1e-300;

[[nodiscard]] KrausResult apply_kraus(const QubitState& state, XKraus m);

/// Two-outcome weak sigma_x measurement M_pm = A I pm B sigma_x with
/// A = (sqrt(kappa) + sqrt(1-kappa))/2 and B = (sqrt(kappa) - sqrt(1-kappa))/2.
class DiscreteMeasurement {
 public:
  explicit DiscreteMeasurement(double kappa);

  /// kappa = 1/2 - sqrt(2 * rate * dt).
  static DiscreteMeasurement from_rate(double rate, double dt);

  [[nodiscard]] double kappa() const { return kappa_; }
  [[nodiscard]] double a() const { return a_; }
  [[nodiscard]] double b() const { return b_; }
  [[nodiscard]] XKraus kraus(Outcome o) const {
    return {a_, o == Outcome::Plus ? b_ : -b_};
  }

 private:
  double kappa_;
  double a_;
  double b_;
};

[[nodiscard]] QubitState thermal_state(const EngineParams& params);

/// Post-measurement state and the forward probability P_f.
[[nodiscard]] std::pair<QubitState, double> apply_discrete(
    const QubitState& state, const DiscreteMeasurement& m, Outcome outcome);

/// Probability that the opposite outcome undoes the measurement, given the
/// forward outcome was observed.
[[nodiscard]] double backward_prob(const QubitState& state,
                                   const DiscreteMeasurement& m,
                                   Outcome outcome);

/// Q = -2 ln 2 - ln(kappa (1 - kappa)); independent of the outcome.
[[nodiscard]] double arrow_discrete(const DiscreteMeasurement& m);
[[nodiscard]] double arrow_discrete(double kappa);

/// Inverse of arrow_discrete on the kappa <= 1/2 branch.
[[nodiscard]] double kappa_from_arrow(double q);

/// Rotation about +y by theta = atan2(x, -z) that brings (x, z) onto the
/// negative z axis. Returns the rotated state and theta.
[[nodiscard]] std::pair<QubitState, double> feedback_rotate(
    const QubitState& state);

/// Mean energy (1 + z)/2 in units of hbar*omega0.
[[nodiscard]] double energy(const QubitState& state);

/// Von Neumann entropy of a state with Bloch length r, in units of k_B.
[[nodiscard]] double entropy_of_length(double r);
[[nodiscard]] double von_neumann_entropy(const QubitState& state);

/// S_L = 2 (1 - tr rho^2) = 1 - r^2.
[[nodiscard]] double linear_entropy(const QubitState& state);

}  // namespace demon
