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

#include <filesystem>
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "demon/config.hpp"
#include "demon/cycle.hpp"
#include "demon/distributions.hpp"
#include "demon/trajectory.hpp"

namespace demon {

/// File-system failure with the offending path in the message.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Column names of the cycle table, in output order.
[[nodiscard]] const std::vector<std::string>& cycle_columns();

void write_cycle_csv(std::ostream& out, std::span<const SweepRow> rows,
                     GridKind kind = GridKind::Kappa);
void write_trajectories_csv(std::ostream& out,
                            std::span<const TrajectoryRecord> records);
void write_curve_csv(std::ostream& out, const DensityCurve& curve);
/// One row per bin; `theory` is the analytic density at the bin center.
void write_histogram_csv(std::ostream& out, const Histogram& hist,
                         const std::function<double(double)>& theory);

/// Goodness of fit of a simulated ensemble against the analytic curves.
struct KsReport {
  double ks_Q = 0.0;
  double ks_W = 0.0;
  double ks_QM = 0.0;
  double ks_dS = 0.0;
};

[[nodiscard]] KsReport compare_ensemble(const Ensemble& ensemble,
                                        const EngineParams& params,
                                        const ContinuousParams& cparams,
                                        std::size_t points = 512);

struct RunOptions {
  std::filesystem::path out_dir = ".";
  /// Threads for trajectory ensembles; 0 picks the hardware count.
  unsigned workers = 0;
};

/// Execute a configuration and write its output files into out_dir.
/// Returns the paths written, in creation order. Warnings go to `log`.
std::vector<std::filesystem::path> run(const RunConfig& config,
                                       const RunOptions& options,
                                       std::ostream& log);

}  // namespace demon
