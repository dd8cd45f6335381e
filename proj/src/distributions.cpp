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

#include "demon/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "demon/cycle.hpp"
#include "demon/qubit.hpp"

namespace demon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_duration(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("T/tau must be a finite value > 0");
  }
}

void require_impure(double z0) {
  if (!(z0 > -1.0 && z0 < 0.0)) {
    throw DomainError("z0 must lie in the open interval (-1, 0)");
  }
}

// Beyond this u the mixture density is below e^-800 of its peak.
double u_upper(double t) { return t + 40.0 * std::sqrt(t) + 1.0; }

// Integral of f(u) over [lo, hi].
double integrate_u(double lo, double hi, double t,
                   const std::function<double(double)>& weight) {
  if (hi <= lo) return 0.0;
  // Integrate over s in [0, 1]: the Kronrod error floor is not scaled by the
  // interval width, so short intervals would otherwise never converge.
  const double width = hi - lo;
  auto integrand = [&](double s) {
    const double u = lo + width * s;
    return weight(u) * arccosh_density(u, t);
  };
  return width * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                     integrand, 0.0, 1.0, 15, 1e-14);
}

double cdf_u(double u, double t) {
  if (u <= 0.0) return 0.0;
  // Closed intervals keep the adaptive rule on the bulk of the mass.
  const double split = std::min(u, t + 1.0);
  return integrate_u(0.0, split, t, [](double) { return 1.0; }) +
         integrate_u(split, u, t, [](double) { return 1.0; });
}

double quantile_u(double p, double t) {
  double lo = 0.0;
  double hi = u_upper(t);
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf_u(mid, t) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Tabulate a monotone function of u on the central mass of the u law.
// `map` sends u to the curve variable; a decreasing map reverses the grid so
// it stays ascending.
DensityCurve tabulate(std::string name, double t, CurveOptions opts,
                      const std::function<double(double)>& map,
                      bool decreasing) {
  require_duration(t);
  if (opts.points < 2) throw DomainError("a curve needs at least two points");
  if (!(opts.mass > 0.0 && opts.mass < 1.0)) {
    throw DomainError("curve mass must lie in (0, 1)");
  }
  const double tail = 0.5 * (1.0 - opts.mass);
  const double u_lo = quantile_u(tail, t);
  const double u_hi = quantile_u(1.0 - tail, t);

  const std::size_t n = opts.points;
  std::vector<double> us(n);
  for (std::size_t i = 0; i < n; ++i) {
    us[i] = u_lo + (u_hi - u_lo) * static_cast<double>(i) /
                       static_cast<double>(n - 1);
  }
  std::vector<double> cdf_u_vals(n);
  cdf_u_vals[0] = cdf_u(us[0], t);
  for (std::size_t i = 1; i < n; ++i) {
    cdf_u_vals[i] = cdf_u_vals[i - 1] +
                    boost::math::quadrature::gauss<double, 20>::integrate(
                        [t](double u) { return arccosh_density(u, t); },
                        us[i - 1], us[i]);
  }

  DensityCurve c;
  c.variable = std::move(name);
  c.t_over_tau = t;
  c.grid.resize(n);
  c.cdf.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = decreasing ? n - 1 - i : i;
    c.grid[i] = map(us[j]);
    c.cdf[i] = decreasing ? 1.0 - cdf_u_vals[j] : cdf_u_vals[j];
  }
  return c;
}

}  // namespace

double arccosh_density(double u, double t) {
  if (u < 0.0) return 0.0;
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * t);
  const double a = (u - t) * (u - t) / (2.0 * t);
  const double b = (u + t) * (u + t) / (2.0 * t);
  return norm * (std::exp(-a) + std::exp(-b));
}

double arrow_of_u(double u) {
  const double a = std::fabs(u);
  return 2.0 * (a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2);
}

double u_of_arrow(double q) {
  if (q <= 0.0) return 0.0;
  // arccosh(e^{Q/2}) = Q/2 + ln(1 + sqrt(1 - e^{-Q}))
  return 0.5 * q + std::log1p(std::sqrt(-std::expm1(-q)));
}

double pdf_Q(double q, double t) {
  require_duration(t);
  if (!(q > 0.0)) throw DomainError("P(Q) is defined for Q > 0");
  if (!std::isfinite(q)) return 0.0;
  // dQ/du = 2 tanh u and tanh u = sqrt(1 - e^{-Q}).
  return arccosh_density(u_of_arrow(q), t) / (2.0 * std::sqrt(-std::expm1(-q)));
}

double cdf_Q(double q, double t) {
  require_duration(t);
  if (q <= 0.0) return 0.0;
  return std::min(1.0, cdf_u(u_of_arrow(q), t));
}

double expect_Q(const std::function<double(double)>& fn, double t) {
  require_duration(t);
  auto weight = [&](double u) { return fn(arrow_of_u(u)); };
  const double split = t + 1.0;
  return integrate_u(0.0, split, t, weight) +
         integrate_u(split, u_upper(t), t, weight);
}

double work_of_arrow(double q, double z0) {
  return closed_form::extracted_work(z0, q);
}

double arrow_of_work(double w, double z0) {
  if (!(w >= 0.0 && w < 0.5)) {
    throw DomainError("extracted work must lie in [0, 1/2)");
  }
  // e^{-Q/2} = 2 W z0 + sqrt(1 + 4 W^2 (z0^2 - 1)), rationalized so the two
  // terms do not cancel as W -> 1/2. Near W = 0 the offset from 1 is formed
  // directly and passed to log1p.
  const double c = 4.0 * w * w * (z0 * z0 - 1.0);
  const double radical = std::sqrt(1.0 + c);
  const double denom = radical - 2.0 * w * z0;
  const double root = (1.0 - 2.0 * w) * (1.0 + 2.0 * w) / denom;
  if (root < 0.5) return -2.0 * std::log(root);
  const double offset = (-4.0 * w * w + 2.0 * w * z0 - c / (1.0 + radical)) / denom;
  return -2.0 * std::log1p(offset);
}

double heat_of_arrow(double q, double z0) {
  return closed_form::measurement_heat(z0, q);
}

double arrow_of_heat(double qm, double z0) {
  if (!(qm >= 0.0 && qm < -0.5 * z0)) {
    throw DomainError("measurement heat must lie in [0, -z0/2)");
  }
  return -2.0 * std::log1p(2.0 * qm / z0);
}

double entropy_of_arrow(double q, double z0) {
  return entropy_of_length(post_measurement_length(z0, q)) -
         entropy_of_length(z0);
}

double entropy_slope(double q, double z0) {
  const double r = post_measurement_length(z0, q);
  const double drdq = std::exp(-q) * (1.0 - z0 * z0) / (2.0 * r);
  return -std::atanh(r) * drdq;
}

double arrow_of_entropy(double ds, double z0) {
  const double floor = -entropy_of_length(z0);
  if (!(ds <= 0.0 && ds > floor)) {
    throw DomainError("entropy change must lie in (-S(|z0|), 0]");
  }
  if (ds == 0.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (entropy_of_arrow(hi, z0) > ds) {
    hi *= 2.0;
    if (hi > 1e4) return hi;
  }
  for (int i = 0; i < 300 && hi - lo > 1e-13 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (entropy_of_arrow(mid, z0) > ds ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double pdf_W(double w, double t, double z0) {
  require_duration(t);
  require_impure(z0);
  if (!(w >= 0.0 && w < 0.5)) return 0.0;
  if (w == 0.0) return kInf;
  const double q = arrow_of_work(w, z0);
  if (!(q > 0.0)) return kInf;
  const double s = std::exp(-0.5 * q);
  const double rho = std::sqrt(1.0 + s * s * (z0 * z0 - 1.0));
  const double slope = -0.25 * s * (z0 + s * (z0 * z0 - 1.0) / rho);
  return pdf_Q(q, t) / slope;
}

double pdf_QM(double qm, double t, double z0) {
  require_duration(t);
  require_impure(z0);
  if (!(qm >= 0.0 && qm < -0.5 * z0)) return 0.0;
  if (qm == 0.0) return kInf;
  const double q = arrow_of_heat(qm, z0);
  const double s = std::exp(-0.5 * q);
  return 4.0 / (std::fabs(z0) * s) * pdf_Q(q, t);
}

double pdf_dS(double ds, double t, double z0) {
  require_duration(t);
  require_impure(z0);
  const double floor = -entropy_of_length(z0);
  if (!(ds <= 0.0 && ds > floor)) return 0.0;
  if (ds == 0.0) return kInf;
  const double q = arrow_of_entropy(ds, z0);
  if (!(q > 0.0)) return kInf;
  return pdf_Q(q, t) / std::fabs(entropy_slope(q, z0));
}

double mean_measurement_heat(double t, double z0) {
  return -0.5 * std::fabs(z0) * std::expm1(-0.5 * t);
}

double DensityCurve::cdf_at(double x) const {
  if (grid.empty()) throw std::logic_error("empty density curve");
  if (x <= grid.front()) return cdf.front();
  if (x >= grid.back()) return cdf.back();
  const auto it = std::upper_bound(grid.begin(), grid.end(), x);
  const auto i = static_cast<std::size_t>(it - grid.begin());
  const double f = (x - grid[i - 1]) / (grid[i] - grid[i - 1]);
  return cdf[i - 1] + f * (cdf[i] - cdf[i - 1]);
}

double DensityCurve::quantile(double p) const {
  if (grid.empty()) throw std::logic_error("empty density curve");
  if (p <= cdf.front()) return grid.front();
  if (p >= cdf.back()) return grid.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), p);
  const auto i = static_cast<std::size_t>(it - cdf.begin());
  const double span = cdf[i] - cdf[i - 1];
  const double f = span > 0.0 ? (p - cdf[i - 1]) / span : 0.0;
  return grid[i - 1] + f * (grid[i] - grid[i - 1]);
}

double DensityCurve::trapezoid() const {
  double acc = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    acc += 0.5 * (density[i] + density[i - 1]) * (grid[i] - grid[i - 1]);
  }
  return acc;
}

DensityCurve curve_from_density(std::string variable, std::vector<double> grid,
                                std::vector<double> density) {
  if (grid.size() != density.size() || grid.size() < 2) {
    throw DomainError("grid and density must have equal length >= 2");
  }
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw DomainError("grid must be ascending");
  }
  DensityCurve c;
  c.variable = std::move(variable);
  c.grid = std::move(grid);
  c.density = std::move(density);
  c.cdf.assign(c.grid.size(), 0.0);
  for (std::size_t i = 1; i < c.grid.size(); ++i) {
    c.cdf[i] = c.cdf[i - 1] + 0.5 * (c.density[i] + c.density[i - 1]) *
                                  (c.grid[i] - c.grid[i - 1]);
  }
  return c;
}

DensityCurve curve_Q(double t, CurveOptions opts) {
  DensityCurve c = tabulate("Q", t, opts, arrow_of_u, false);
  c.density.resize(c.grid.size());
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    c.density[i] = c.grid[i] > 0.0 ? pdf_Q(c.grid[i], t) : kInf;
  }
  return c;
}

DensityCurve curve_W(double t, double z0, std::optional<double> omega0,
                     CurveOptions opts) {
  require_impure(z0);
  DensityCurve c = tabulate(
      "W_ext", t, opts,
      [z0](double u) { return work_of_arrow(arrow_of_u(u), z0); }, false);
  c.density.resize(c.grid.size());
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    c.density[i] = pdf_W(c.grid[i], t, z0);
  }
  c.z0 = z0;
  c.omega0 = omega0;
  return c;
}

DensityCurve curve_QM(double t, double z0, std::optional<double> omega0,
                      CurveOptions opts) {
  require_impure(z0);
  DensityCurve c = tabulate(
      "Q_M", t, opts,
      [z0](double u) { return heat_of_arrow(arrow_of_u(u), z0); }, false);
  c.density.resize(c.grid.size());
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    c.density[i] = pdf_QM(c.grid[i], t, z0);
  }
  c.z0 = z0;
  c.omega0 = omega0;
  return c;
}

DensityCurve curve_dS(double t, double z0, CurveOptions opts) {
  require_impure(z0);
  DensityCurve c = tabulate(
      "dS_M", t, opts,
      [z0](double u) { return entropy_of_arrow(arrow_of_u(u), z0); }, true);
  c.density.resize(c.grid.size());
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    c.density[i] = pdf_dS(c.grid[i], t, z0);
  }
  c.z0 = z0;
  return c;
}

Histogram::Histogram(std::span<const double> samples, std::size_t bins) {
  if (samples.empty()) throw DomainError("histogram needs at least one sample");
  const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  double lo = *mn;
  double hi = *mx;
  if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  fill(samples, bins, lo, hi);
}

Histogram::Histogram(std::span<const double> samples, std::size_t bins,
                     double lo, double hi) {
  if (!(hi > lo)) throw DomainError("histogram range must satisfy lo < hi");
  fill(samples, bins, lo, hi);
}

void Histogram::fill(std::span<const double> samples, std::size_t bins,
                     double lo, double hi) {
  if (bins == 0) throw DomainError("histogram needs at least one bin");
  edges_.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    edges_[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  }
  counts_.assign(bins, 0);
  const double w = (hi - lo) / static_cast<double>(bins);
  for (const double v : samples) {
    if (!(v >= lo && v <= hi)) continue;
    auto k = static_cast<std::size_t>((v - lo) / w);
    if (k >= bins) k = bins - 1;
    ++counts_[k];
    ++total_;
  }
}

double Histogram::density(std::size_t bin) const {
  if (total_ == 0) return 0.0;
  return static_cast<double>(counts_.at(bin)) /
         (static_cast<double>(total_) * width());
}

double Histogram::center(std::size_t bin) const {
  return 0.5 * (edges_.at(bin) + edges_.at(bin + 1));
}

double ks_distance(std::span<const double> samples,
                   const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DomainError("KS distance needs samples");
  if (samples.size() < kMinKsSamples) {
    throw DomainError("KS distance needs at least 100 samples");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const auto k = static_cast<double>(i);
    d = std::max({d, (k + 1.0) / n - f, f - k / n});
  }
  return d;
}

double ks_distance(std::span<const double> samples, const DensityCurve& curve) {
  return ks_distance(samples, [&curve](double x) { return curve.cdf_at(x); });
}

double ks_distance(const Histogram& hist, const DensityCurve& curve) {
  if (hist.total() == 0) throw DomainError("KS distance needs samples");
  const auto n = static_cast<double>(hist.total());
  double cum = 0.0;
  double d = std::fabs(curve.cdf_at(hist.edges().front()));
  for (std::size_t i = 0; i < hist.bins(); ++i) {
    cum += static_cast<double>(hist.counts()[i]);
    d = std::max(d, std::fabs(cum / n - curve.cdf_at(hist.edges()[i + 1])));
  }
  return d;
}

std::vector<double> sample_curve(const DensityCurve& curve, std::size_t n,
                                 RandomStream& rng) {
  std::vector<double> out(n);
  for (auto& v : out) v = curve.quantile(rng.uniform());
  return out;
}

}  // namespace demon
