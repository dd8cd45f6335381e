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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "demon/qubit.hpp"
#include "demon/rng.hpp"

namespace demon {

struct ContinuousParams {
  /// Ratio delta_t / tau between successive readouts.
  double dt_over_tau = 0.01;
  std::size_t n_steps = 15;
  std::size_t n_traj = 20000;
  std::uint64_t master_seed = 42;
  /// Keep every intermediate state, not only the endpoints.
  bool retain_path = false;

  /// Total duration T / tau.
  [[nodiscard]] double duration() const {
    return dt_over_tau * static_cast<double>(n_steps);
  }
  void validate() const;
  [[nodiscard]] std::vector<std::string> warnings() const;
};

struct TrajectoryRecord {
  std::vector<double> readouts;
  /// Filled only when retain_path is set; states[0] is the initial state.
  std::vector<QubitState> states;
  QubitState initial;
  QubitState pre_feedback;
  QubitState final_state;
  double Q = 0.0;
  double W_ext = 0.0;
  double Q_M = 0.0;
  double dS_M = 0.0;
  /// Sum of ln tr(M_F rho M_F^dag) over the record.
  double log_likelihood = 0.0;
};

/// Draw r from p(r) = p+ N(+1, tau/dt) + p- N(-1, tau/dt), p_pm = (1 pm x)/2.
[[nodiscard]] double sample_readout(const QubitState& state,
                                    double dt_over_tau, RandomStream& rng);

/// Apply the forward Kraus operator for readout r. Returns the normalized
/// state and ln tr(M_F rho M_F^dag), Gaussian prefactor included.
[[nodiscard]] std::pair<QubitState, double> step(const QubitState& state,
                                                 double r, double dt_over_tau);

/// Arrow of time of a readout record. Thermal (x = y = 0) starts use the
/// closed form ln cosh^2(G), G = (dt/tau) sum r; other starts fall back to
/// the operator-product route.
[[nodiscard]] double arrow_continuous(std::span<const double> readouts,
                                      double dt_over_tau,
                                      const QubitState& initial);

/// ln P_F(record | initial) - ln P_B(reversed record | post-measurement
/// state), evaluated step by step with the Kraus operators. Valid for any
/// physical initial state.
[[nodiscard]] double arrow_from_operators(std::span<const double> readouts,
                                          double dt_over_tau,
                                          const QubitState& initial);

[[nodiscard]] TrajectoryRecord run_trajectory(const EngineParams& params,
                                              const ContinuousParams& cparams,
                                              std::uint64_t traj_index);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

struct EnsembleSummary {
  std::size_t n_traj = 0;
  MeanEstimate Q;
  MeanEstimate W_ext;
  MeanEstimate Q_M;
  MeanEstimate dS_M;
  MeanEstimate z_pre_feedback;
  MeanEstimate exp_minus_half_Q;
  MeanEstimate exp_minus_Q;
};

struct Ensemble {
  std::vector<TrajectoryRecord> records;
  EnsembleSummary summary;
};

[[nodiscard]] MeanEstimate estimate_mean(std::span<const double> values);

/// Run every trajectory of cparams on `workers` threads (0 = hardware
/// concurrency). Records are gathered by index, so the result is identical
/// for any worker count.
[[nodiscard]] Ensemble run_ensemble(const EngineParams& params,
                                    const ContinuousParams& cparams,
                                    unsigned workers = 0);

}  // namespace demon
