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

#include "demon/harness.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"

namespace demon {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string num(double v) { return format_double(v); }

std::string opt(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string{};
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw OutputError("write failed for '" + path.string() + "'");
}

template <typename Writer>
fs::path write_file(const fs::path& path, Writer&& writer,
                    std::vector<fs::path>& written) {
  auto out = open_output(path);
  writer(out);
  finish(out, path);
  written.push_back(path);
  return path;
}

json estimate_json(const MeanEstimate& m) {
  return json{{"mean", m.mean}, {"std_error", m.std_error}};
}

json params_json(const RunConfig& c) {
  json j;
  j["omega0"] = c.omega0;
  j["t_demon"] = c.t_demon;
  j["z0"] = c.engine().z0();
  j["z0_override"] = c.z0 ? json(*c.z0) : json(nullptr);
  j["dt_over_tau"] = c.dt_over_tau;
  j["n_steps"] = c.n_steps;
  j["n_traj"] = c.n_traj;
  j["T_over_tau"] = c.continuous().duration();
  return j;
}

json summary_json(const RunConfig& c, const Ensemble& ens) {
  const auto& s = ens.summary;
  const double t = c.continuous().duration();
  const double z0 = c.engine().z0();
  json j;
  j["master_seed"] = c.master_seed;
  j["parameters"] = params_json(c);
  j["config"] = to_text(c);
  j["n_traj"] = s.n_traj;
  j["means"] = json{{"Q", estimate_json(s.Q)},
                    {"W_ext", estimate_json(s.W_ext)},
                    {"Q_M", estimate_json(s.Q_M)},
                    {"dS_M", estimate_json(s.dS_M)},
                    {"z_pre_feedback", estimate_json(s.z_pre_feedback)},
                    {"exp_minus_half_Q", estimate_json(s.exp_minus_half_Q)},
                    {"exp_minus_Q", estimate_json(s.exp_minus_Q)}};
  j["theory"] = json{{"Q_M_mean", mean_measurement_heat(t, z0)},
                     {"z_pre_feedback_mean", z0 * std::exp(-0.5 * t)},
                     {"exp_minus_half_Q_mean", std::exp(-0.5 * t)}};
  return j;
}

bool has_distributions(const RunConfig& c) {
  const double z0 = c.engine().z0();
  return c.n_steps > 0 && z0 > -1.0 && z0 < 0.0;
}

json ks_json(const KsReport& k) {
  return json{{"ks_Q", k.ks_Q}, {"ks_W", k.ks_W}, {"ks_QM", k.ks_QM}, {"ks_dS", k.ks_dS}};
}

std::vector<double> column(const Ensemble& ens, double TrajectoryRecord::*field) {
  std::vector<double> out;
  out.reserve(ens.records.size());
  for (const auto& r : ens.records) out.push_back(r.*field);
  return out;
}

}  // namespace

const std::vector<std::string>& cycle_columns() {
  static const std::vector<std::string> cols{
      "kappa", "Q",    "E0",   "E_M",   "E_f",   "Q_M",      "W_ext", "W_er",
      "eta",   "cop",  "dS_M", "dS_er", "dS_total", "Q_th", "status"};
  return cols;
}

void write_cycle_csv(std::ostream& out, std::span<const SweepRow> rows,
                     GridKind kind) {
  const auto& cols = cycle_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& row : rows) {
    if (!row.report) {
      const std::string in = num(row.input);
      out << (kind == GridKind::Kappa ? in : "") << ','
          << (kind == GridKind::Arrow ? in : "")
          << ",,,,,,,,,,,,," << csv_quote("error: " + row.error) << '\n';
      continue;
    }
    const CycleReport& r = *row.report;
    out << num(r.kappa) << ',' << num(r.Q) << ',' << num(r.E0) << ','
        << num(r.E_M) << ',' << num(r.E_f) << ',' << num(r.Q_M) << ','
        << num(r.W_ext) << ',' << num(r.W_er) << ',' << opt(r.eta) << ','
        << opt(r.cop) << ',' << num(r.dS_M) << ',' << num(r.dS_er) << ','
        << num(r.dS_total) << ',' << num(r.Q_th) << ",ok\n";
  }
}

void write_trajectories_csv(std::ostream& out,
                            std::span<const TrajectoryRecord> records) {
  out << "index,Q,W_ext,Q_M,dS_M,x_pre_feedback,z_pre_feedback,z_final,log_likelihood\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    out << i << ',' << num(r.Q) << ',' << num(r.W_ext) << ',' << num(r.Q_M)
        << ',' << num(r.dS_M) << ',' << num(r.pre_feedback.x) << ','
        << num(r.pre_feedback.z) << ',' << num(r.final_state.z) << ','
        << num(r.log_likelihood) << '\n';
  }
}

void write_curve_csv(std::ostream& out, const DensityCurve& curve) {
  out << curve.variable << ",density,cdf\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    out << num(curve.grid[i]) << ',' << num(curve.density[i]) << ','
        << num(curve.cdf[i]) << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const Histogram& hist,
                         const std::function<double(double)>& theory) {
  out << "bin_lo,bin_hi,center,count,density,theory\n";
  for (std::size_t i = 0; i < hist.bins(); ++i) {
    const double c = hist.center(i);
    out << num(hist.edges()[i]) << ',' << num(hist.edges()[i + 1]) << ','
        << num(c) << ',' << hist.counts()[i] << ',' << num(hist.density(i))
        << ',' << num(theory(c)) << '\n';
  }
}

KsReport compare_ensemble(const Ensemble& ens, const EngineParams& params,
                          const ContinuousParams& cparams, std::size_t points) {
  const double t = cparams.duration();
  const double z0 = params.z0();
  const CurveOptions opts{points, 0.999};
  KsReport k;
  k.ks_Q = ks_distance(column(ens, &TrajectoryRecord::Q), curve_Q(t, opts));
  k.ks_W = ks_distance(column(ens, &TrajectoryRecord::W_ext),
                       curve_W(t, z0, params.omega0(), opts));
  k.ks_QM = ks_distance(column(ens, &TrajectoryRecord::Q_M),
                        curve_QM(t, z0, params.omega0(), opts));
  k.ks_dS = ks_distance(column(ens, &TrajectoryRecord::dS_M), curve_dS(t, z0, opts));
  return k;
}

std::vector<fs::path> run(const RunConfig& c, const RunOptions& options,
                          std::ostream& log) {
  const EngineParams params = c.engine();
  for (const auto& w : params.warnings()) log << "warning: " << w << '\n';

  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec) {
    throw OutputError("cannot create output directory '" + options.out_dir.string() +
                      "': " + ec.message());
  }

  std::vector<fs::path> written;
  const auto path = [&](const char* name) { return options.out_dir / name; };
  write_file(path("config.echo"), [&](std::ostream& o) { o << to_text(c); }, written);

  switch (c.mode) {
    case Mode::Discrete: {
      const std::vector<double> grid{*c.kappa};
      const auto rows = sweep(params, grid, GridKind::Kappa);
      write_file(path("cycle.csv"), [&](std::ostream& o) { write_cycle_csv(o, rows); },
                 written);
      break;
    }
    case Mode::Sweep: {
      const bool by_kappa = !c.kappa_grid.empty();
      const GridKind kind = by_kappa ? GridKind::Kappa : GridKind::Arrow;
      const auto rows = sweep(params, by_kappa ? c.kappa_grid : c.q_grid, kind);
      write_file(path("sweep.csv"),
                 [&](std::ostream& o) { write_cycle_csv(o, rows, kind); }, written);
      break;
    }
    case Mode::Simulate:
    case Mode::Compare: {
      const ContinuousParams cp = c.continuous();
      if (c.mode == Mode::Compare && !has_distributions(c)) {
        throw DomainError(
            "compare needs n_steps >= 1 and an impure initial state (z0 in (-1, 0))");
      }
      for (const auto& w : cp.warnings()) log << "warning: " << w << '\n';
      const Ensemble ens = run_ensemble(params, cp, options.workers);
      write_file(path("trajectories.csv"),
                 [&](std::ostream& o) { write_trajectories_csv(o, ens.records); },
                 written);

      json summary = summary_json(c, ens);
      if (has_distributions(c)) {
        const KsReport ks = compare_ensemble(ens, params, cp, c.points);
        summary["ks"] = ks_json(ks);
        if (c.mode == Mode::Compare) {
          const double t = cp.duration();
          const double z0 = params.z0();
          auto hist = [&](const char* name, double TrajectoryRecord::*field,
                          std::function<double(double)> theory) {
            const auto values = column(ens, field);
            const Histogram h(values, c.bins);
            write_file(path(name),
                       [&](std::ostream& o) { write_histogram_csv(o, h, theory); },
                       written);
          };
          hist("hist_Q.csv", &TrajectoryRecord::Q,
               [t](double q) { return q > 0.0 ? pdf_Q(q, t) : 0.0; });
          hist("hist_W_ext.csv", &TrajectoryRecord::W_ext,
               [t, z0](double w) { return pdf_W(w, t, z0); });
          hist("hist_Q_M.csv", &TrajectoryRecord::Q_M,
               [t, z0](double q) { return pdf_QM(q, t, z0); });
          hist("hist_dS_M.csv", &TrajectoryRecord::dS_M,
               [t, z0](double s) { return pdf_dS(s, t, z0); });

          json cmp = ks_json(ks);
          cmp["summary"] = summary;
          write_file(path("compare.json"),
                     [&](std::ostream& o) { o << cmp.dump(2) << '\n'; }, written);
        }
      } else {
        summary["ks"] = nullptr;
      }
      write_file(path("summary.json"),
                 [&](std::ostream& o) { o << summary.dump(2) << '\n'; }, written);
      break;
    }
    case Mode::Pdf: {
      const double t = c.continuous().duration();
      const double z0 = params.z0();
      const CurveOptions opts{c.points, 0.999};
      auto curve = [&](const char* name, const DensityCurve& dc) {
        write_file(path(name), [&](std::ostream& o) { write_curve_csv(o, dc); }, written);
      };
      curve("pdf_Q.csv", curve_Q(t, opts));
      curve("pdf_W_ext.csv", curve_W(t, z0, params.omega0(), opts));
      curve("pdf_Q_M.csv", curve_QM(t, z0, params.omega0(), opts));
      curve("pdf_dS_M.csv", curve_dS(t, z0, opts));
      break;
    }
  }
  return written;
}

}  // namespace demon
