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

#include "demon/cycle.hpp"

#include <cmath>
#include <numbers>

namespace demon {

double post_measurement_length(double z0, double q) {
  // 1 + e^-Q (z0^2 - 1) = 1 - e^-Q (1 - z0^2)
  const double v = 1.0 - std::exp(-q) * (1.0 - z0 * z0);
  return std::sqrt(std::max(v, 0.0));
}

namespace closed_form {

double measured_energy(double z0, double q) {
  return 0.5 * (1.0 + z0 * std::exp(-0.5 * q));
}

double measurement_heat(double z0, double q) {
  return 0.5 * z0 * std::expm1(-0.5 * q);
}

double feedback_energy(double z0, double q) {
  return 0.5 * (1.0 - post_measurement_length(z0, q));
}

double extracted_work(double z0, double q) {
  return 0.5 * (z0 * std::exp(-0.5 * q) + post_measurement_length(z0, q));
}

double efficiency(double z0, double q, double erasure_work) {
  const double num = 1.0 - post_measurement_length(z0, q) + 2.0 * erasure_work;
  return 1.0 - num / (1.0 + z0 * std::exp(-0.5 * q));
}

double cop(double z0, double q, double erasure_work) {
  const double num = z0 + post_measurement_length(z0, q);
  return num / (z0 * std::expm1(-0.5 * q) + 2.0 * erasure_work);
}

double measurement_entropy(double z0, double q) {
  const double zf = post_measurement_length(z0, q);
  const double gamma0 = z0 * std::log((1.0 + z0) / (1.0 - z0));
  return 0.5 * (q + gamma0 - zf * std::log((1.0 + zf) / (1.0 - zf)));
}

}  // namespace closed_form

CycleReport run_cycle(const EngineParams& params, double kappa) {
  const DiscreteMeasurement m(kappa);
  const QubitState initial = thermal_state(params);

  CycleReport r;
  r.kappa = kappa;
  r.Q = arrow_discrete(m);

  // Both outcomes give the same energies and Bloch length, so follow (+).
  const auto [measured, pf] = apply_discrete(initial, m, Outcome::Plus);
  const auto [fed_back, theta] = feedback_rotate(measured);
  (void)pf;
  (void)theta;

  r.E0 = energy(initial);
  r.E_M = energy(measured);
  r.E_f = energy(fed_back);
  r.Q_M = r.E_M - r.E0;
  r.W_ext = r.E_M - r.E_f;
  r.W_er = params.erasure_work();
  r.Q_th = r.E0 - r.E_f;

  const EntropyChange ds = entropy_change(params, kappa);
  r.dS_M = ds.dS_M;
  r.dS_er = ds.dS_er;
  r.dS_total = ds.dS_total;

  try {
    r.eta = efficiency(r);
  } catch (const UndefinedQuantity&) {
    r.eta.reset();
  }
  try {
    r.cop = cop(r);
  } catch (const UndefinedQuantity&) {
    r.cop.reset();
  }
  return r;
}

double efficiency(const CycleReport& r) {
  if (r.E_M == 0.0) {
    throw UndefinedQuantity("efficiency undefined: post-measurement energy is zero");
  }
  return (r.W_ext - r.W_er) / r.E_M;
}

double cop(const CycleReport& r) {
  const double denom = r.Q_M + r.W_er;
  if (denom == 0.0) {
    throw UndefinedQuantity(
        "coefficient of performance undefined: no measurement heat and no erasure cost");
  }
  return r.Q_th / denom;
}

EntropyChange entropy_change(const EngineParams& params, double kappa) {
  const DiscreteMeasurement m(kappa);
  const QubitState initial = thermal_state(params);
  const auto [measured, pf] = apply_discrete(initial, m, Outcome::Plus);
  (void)pf;

  EntropyChange out;
  out.dS_M = von_neumann_entropy(measured) - von_neumann_entropy(initial);
  out.dS_er = std::numbers::ln2;
  out.dS_total = out.dS_M + out.dS_er;
  return out;
}

std::vector<SweepRow> sweep(const EngineParams& params,
                            std::span<const double> grid, GridKind kind) {
  if (grid.empty()) throw DomainError("sweep grid is empty");
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const double v : grid) {
    SweepRow row;
    row.input = v;
    try {
      const double kappa = kind == GridKind::Kappa ? v : kappa_from_arrow(v);
      row.report = run_cycle(params, kappa);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace demon
