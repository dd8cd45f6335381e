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
#include <span>
#include <string>
#include <vector>

#include "demon/qubit.hpp"

namespace demon {

/// Raised when an efficiency or COP has a vanishing denominator.
class UndefinedQuantity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thermodynamics of one measure / feedback / erase / thermalize cycle.
/// Energies in hbar*omega0, entropies in k_B.
struct CycleReport {
  double kappa = 0.5;
  double Q = 0.0;
  double E0 = 0.0;
  double E_M = 0.0;
  double E_f = 0.0;
  double Q_M = 0.0;
  double W_ext = 0.0;
  double W_er = 0.0;
  std::optional<double> eta;
  std::optional<double> cop;
  double dS_M = 0.0;
  double dS_er = 0.0;
  double dS_total = 0.0;
  /// Heat drawn from the reservoir on reset, E0 - E_f.
  double Q_th = 0.0;
};

struct EntropyChange {
  double dS_M = 0.0;
  double dS_er = 0.0;
  double dS_total = 0.0;
};

/// Bloch length after a weak measurement with arrow of time Q on a thermal
/// state: sqrt(1 + e^-Q (z0^2 - 1)).
[[nodiscard]] double post_measurement_length(double z0, double q);

/// Closed forms in terms of the arrow of time Q and the initial z0.
namespace closed_form {
[[nodiscard]] double measured_energy(double z0, double q);
[[nodiscard]] double measurement_heat(double z0, double q);
[[nodiscard]] double feedback_energy(double z0, double q);
[[nodiscard]] double extracted_work(double z0, double q);
[[nodiscard]] double efficiency(double z0, double q, double erasure_work);
[[nodiscard]] double cop(double z0, double q, double erasure_work);
/// Boundary-term form of the measurement entropy change; requires z0 in (-1, 0).
[[nodiscard]] double measurement_entropy(double z0, double q);
}  // namespace closed_form

[[nodiscard]] CycleReport run_cycle(const EngineParams& params, double kappa);

/// (W_ext - W_er) / E_M; throws UndefinedQuantity when E_M = 0.
[[nodiscard]] double efficiency(const CycleReport& report);

/// (E0 - E_f) / (Q_M + W_er); throws UndefinedQuantity on a zero denominator.
[[nodiscard]] double cop(const CycleReport& report);

[[nodiscard]] EntropyChange entropy_change(const EngineParams& params,
                                           double kappa);

enum class GridKind { Kappa, Arrow };

struct SweepRow {
  double input = 0.0;
  std::optional<CycleReport> report;
  /// Empty when the row is valid, otherwise the reason it was flagged.
  std::string error;
};

/// One row per grid point in grid order. Arrow grids are mapped to kappa on
/// the kappa <= 1/2 branch. Bad points produce flagged rows.
[[nodiscard]] std::vector<SweepRow> sweep(const EngineParams& params,
                                          std::span<const double> grid,
                                          GridKind kind = GridKind::Kappa);

}  // namespace demon
