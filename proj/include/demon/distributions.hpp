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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "demon/rng.hpp"

namespace demon {

// Finite-time statistics of a thermal qubit under a sequence of weak
// sigma_x measurements of total duration T (in units of tau).
//
// With G = (dt/tau) * sum(r), G is an equal mixture of N(+T, T) and N(-T, T)
// and Q = 2 ln cosh G. Every density here is expressed in u = |G| =
// arccosh(e^{Q/2}), where the Q -> 0 singularity disappears:
//   f(u) = (2 / sqrt(2 pi T)) exp(-T/2 - u^2 / 2T) cosh u,  u >= 0.

/// Density of u = arccosh(e^{Q/2}).
[[nodiscard]] double arccosh_density(double u, double t_over_tau);

/// Q as a function of u, 2 ln cosh u.
[[nodiscard]] double arrow_of_u(double u);
/// u as a function of Q >= 0.
[[nodiscard]] double u_of_arrow(double q);

/// P(Q) for Q > 0; throws DomainError for Q <= 0 or T <= 0.
[[nodiscard]] double pdf_Q(double q, double t_over_tau);

/// P(Q' <= Q) by quadrature in u.
[[nodiscard]] double cdf_Q(double q, double t_over_tau);

/// E[fn(Q)] by quadrature in u.
[[nodiscard]] double expect_Q(const std::function<double(double)>& fn,
                              double t_over_tau);

/// Q -> W_ext and its inverse (W in units of hbar*omega0, W in [0, 1/2)).
[[nodiscard]] double work_of_arrow(double q, double z0);
[[nodiscard]] double arrow_of_work(double w, double z0);

/// Q -> Q_M and inverse, Q_M in [0, -z0/2).
[[nodiscard]] double heat_of_arrow(double q, double z0);
[[nodiscard]] double arrow_of_heat(double qm, double z0);

/// Q -> Delta S_M (von Neumann) and its inverse by bracketed bisection.
[[nodiscard]] double entropy_of_arrow(double q, double z0);
[[nodiscard]] double arrow_of_entropy(double ds, double z0);
/// d(Delta S_M)/dQ, always negative for Q >= 0.
[[nodiscard]] double entropy_slope(double q, double z0);

/// Densities obtained from P(Q) by change of variables. Energies in units
/// of hbar*omega0. Outside the attainable range the density is zero; at the
/// Q = 0 end point it is +infinity. z0 must lie in (-1, 0).
[[nodiscard]] double pdf_W(double w, double t_over_tau, double z0);
[[nodiscard]] double pdf_QM(double qm, double t_over_tau, double z0);
[[nodiscard]] double pdf_dS(double ds, double t_over_tau, double z0);

/// Ensemble mean of the measurement heat, |z0| (1 - e^{-T/2}) / 2.
[[nodiscard]] double mean_measurement_heat(double t_over_tau, double z0);

/// A density tabulated on an ascending grid together with its CDF.
struct DensityCurve {
  std::string variable;
  std::vector<double> grid;
  std::vector<double> density;
  std::vector<double> cdf;
  double t_over_tau = 0.0;
  std::optional<double> z0;
  std::optional<double> omega0;

  /// CDF at x by linear interpolation, clamped to the tabulated range.
  [[nodiscard]] double cdf_at(double x) const;
  /// Inverse CDF by linear interpolation, clamped to the tabulated range.
  [[nodiscard]] double quantile(double p) const;
  /// Trapezoidal integral of the density over the grid.
  [[nodiscard]] double trapezoid() const;
};

/// Build a curve from raw density values; the CDF is the cumulative trapezoid.
[[nodiscard]] DensityCurve curve_from_density(std::string variable,
                                              std::vector<double> grid,
                                              std::vector<double> density);

struct CurveOptions {
  std::size_t points = 512;
  /// Central probability mass spanned by the grid.
  double mass = 0.999;
};

[[nodiscard]] DensityCurve curve_Q(double t_over_tau, CurveOptions opts = {});
[[nodiscard]] DensityCurve curve_W(double t_over_tau, double z0,
                                   std::optional<double> omega0 = std::nullopt,
                                   CurveOptions opts = {});
[[nodiscard]] DensityCurve curve_QM(double t_over_tau, double z0,
                                    std::optional<double> omega0 = std::nullopt,
                                    CurveOptions opts = {});
[[nodiscard]] DensityCurve curve_dS(double t_over_tau, double z0,
                                    CurveOptions opts = {});

/// Uniform-bin histogram with density normalization.
class Histogram {
 public:
  /// Range spans [min, max] of the samples.
  Histogram(std::span<const double> samples, std::size_t bins);
  /// Explicit range; samples outside [lo, hi] are not counted.
  Histogram(std::span<const double> samples, std::size_t bins, double lo,
            double hi);

  [[nodiscard]] const std::vector<double>& edges() const { return edges_; }
  [[nodiscard]] const std::vector<std::size_t>& counts() const { return counts_; }
  [[nodiscard]] std::size_t total() const { return total_; }
  [[nodiscard]] std::size_t bins() const { return counts_.size(); }
  [[nodiscard]] double width() const { return edges_[1] - edges_[0]; }
  [[nodiscard]] double density(std::size_t bin) const;
  [[nodiscard]] double center(std::size_t bin) const;

 private:
  void fill(std::span<const double> samples, std::size_t bins, double lo,
            double hi);

  std::vector<double> edges_;
  std::vector<std::size_t> counts_;
  std::size_t total_ = 0;
};

inline constexpr std::size_t kMinKsSamples = 100;

/// Sup distance between the empirical CDF of samples and a reference CDF.
[[nodiscard]] double ks_distance(std::span<const double> samples,
                                 const std::function<double(double)>& cdf);
[[nodiscard]] double ks_distance(std::span<const double> samples,
                                 const DensityCurve& curve);
/// Histogram version: compares cumulative counts at each bin edge.
[[nodiscard]] double ks_distance(const Histogram& hist, const DensityCurve& curve);

/// n draws from the curve by inverse-CDF sampling.
[[nodiscard]] std::vector<double> sample_curve(const DensityCurve& curve,
                                               std::size_t n,
                                               RandomStream& rng);

}  // namespace demon
