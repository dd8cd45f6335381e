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

#include "demon/trajectory.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace demon {

namespace {

// ln cosh(g) without overflow.
double log_cosh(double g) {
  const double a = std::fabs(g);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

bool is_thermal(const QubitState& s) { return s.x == 0.0 && s.y == 0.0; }

}  // namespace

void ContinuousParams::validate() const {
  if (!(dt_over_tau > 0.0) || !std::isfinite(dt_over_tau)) {
    throw DomainError("dt_over_tau must be a finite value > 0");
  }
  if (n_traj == 0) throw DomainError("n_traj must be >= 1");
}

std::vector<std::string> ContinuousParams::warnings() const {
  std::vector<std::string> out;
  if (dt_over_tau > 0.1) {
    out.emplace_back("dt_over_tau > 0.1: outside the weak-measurement regime");
  }
  return out;
}

double sample_readout(const QubitState& state, double dt_over_tau,
                      RandomStream& rng) {
  const double p_plus = 0.5 * (1.0 + state.x);
  const double mean = rng.uniform() <= p_plus ? 1.0 : -1.0;
  return mean + rng.normal() / std::sqrt(dt_over_tau);
}

std::pair<QubitState, double> step(const QubitState& s, double r,
                                   double dt_over_tau) {
  // M_F = c exp(-dt (r^2 + 1) / 4 tau) exp(g sigma_x / 2), g = dt r / tau.
  // Written with e^{-2|g|} so large |g| neither overflows nor cancels.
  const double g = dt_over_tau * r;
  const double sgn = g < 0.0 ? -1.0 : 1.0;
  const double a = std::fabs(g);
  const double decay = std::exp(-2.0 * a);
  const double xs = s.x * sgn;
  // D = cosh g + x sinh g = e^{|g|} * norm
  const double norm = 0.5 * ((1.0 + xs) + (1.0 - xs) * decay);
  if (!(norm > 0.0)) {
    throw ImpossibleOutcome("readout has zero likelihood for this state");
  }
  const double x_new =
      sgn * 0.5 * ((1.0 + xs) - (1.0 - xs) * decay) / norm;
  const double shrink = std::exp(-a) / norm;
  const QubitState out{x_new, s.y * shrink, s.z * shrink};

  const double log_prefactor =
      0.5 * std::log(dt_over_tau / (2.0 * std::numbers::pi)) -
      0.5 * dt_over_tau * (r * r + 1.0);
  return {out, log_prefactor + a + std::log(norm)};
}

double arrow_from_operators(std::span<const double> readouts,
                            double dt_over_tau, const QubitState& initial) {
  QubitState s = initial;
  double log_forward = 0.0;
  for (const double r : readouts) {
    auto [next, logl] = step(s, r, dt_over_tau);
    s = next;
    log_forward += logl;
  }
  // Backward operators are the forward ones at r_B = -r, applied in reverse.
  double log_backward = 0.0;
  for (auto it = readouts.rbegin(); it != readouts.rend(); ++it) {
    auto [next, logl] = step(s, -*it, dt_over_tau);
    s = next;
    log_backward += logl;
  }
  return log_forward - log_backward;
}

double arrow_continuous(std::span<const double> readouts, double dt_over_tau,
                        const QubitState& initial) {
  if (!is_thermal(initial)) {
    return arrow_from_operators(readouts, dt_over_tau, initial);
  }
  double sum = 0.0;
  for (const double r : readouts) sum += r;
  return 2.0 * log_cosh(dt_over_tau * sum);
}

TrajectoryRecord run_trajectory(const EngineParams& params,
                                const ContinuousParams& cparams,
                                std::uint64_t traj_index) {
  if (traj_index >= cparams.n_traj) {
    throw DomainError("trajectory index out of range");
  }
  RandomStream rng(cparams.master_seed, traj_index);

  TrajectoryRecord rec;
  rec.initial = thermal_state(params);
  rec.readouts.reserve(cparams.n_steps);
  if (cparams.retain_path) {
    rec.states.reserve(cparams.n_steps + 1);
    rec.states.push_back(rec.initial);
  }

  QubitState s = rec.initial;
  for (std::size_t k = 0; k < cparams.n_steps; ++k) {
    const double r = sample_readout(s, cparams.dt_over_tau, rng);
    auto [next, logl] = step(s, r, cparams.dt_over_tau);
    s = next;
    rec.log_likelihood += logl;
    rec.readouts.push_back(r);
    if (cparams.retain_path) rec.states.push_back(s);
  }
  rec.pre_feedback = s;
  rec.final_state = feedback_rotate(s).first;

  rec.Q = arrow_continuous(rec.readouts, cparams.dt_over_tau, rec.initial);
  rec.W_ext = energy(rec.pre_feedback) - energy(rec.final_state);
  rec.Q_M = energy(rec.pre_feedback) - energy(rec.initial);
  rec.dS_M = von_neumann_entropy(rec.final_state) - von_neumann_entropy(rec.initial);
  return rec;
}

MeanEstimate estimate_mean(std::span<const double> values) {
  MeanEstimate out;
  const auto n = static_cast<double>(values.size());
  if (values.empty()) return out;
  double sum = 0.0;
  for (const double v : values) sum += v;
  out.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return out;
}

Ensemble run_ensemble(const EngineParams& params,
                      const ContinuousParams& cparams, unsigned workers) {
  cparams.validate();
  Ensemble ens;
  ens.records.resize(cparams.n_traj);

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, cparams.n_traj));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cparams.n_traj; i = next++) {
      ens.records[i] = run_trajectory(params, cparams, i);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  const std::size_t n = ens.records.size();
  std::vector<double> buf(n);
  auto column = [&](auto field) {
    std::transform(ens.records.begin(), ens.records.end(), buf.begin(), field);
    return estimate_mean(buf);
  };
  auto& sm = ens.summary;
  sm.n_traj = n;
  sm.Q = column([](const TrajectoryRecord& r) { return r.Q; });
  sm.W_ext = column([](const TrajectoryRecord& r) { return r.W_ext; });
  sm.Q_M = column([](const TrajectoryRecord& r) { return r.Q_M; });
  sm.dS_M = column([](const TrajectoryRecord& r) { return r.dS_M; });
  sm.z_pre_feedback =
      column([](const TrajectoryRecord& r) { return r.pre_feedback.z; });
  sm.exp_minus_half_Q =
      column([](const TrajectoryRecord& r) { return std::exp(-0.5 * r.Q); });
  sm.exp_minus_Q = column([](const TrajectoryRecord& r) { return std::exp(-r.Q); });
  return ens;
}

}  // namespace demon
