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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "doctest.h"
#include "demon/cycle.hpp"
#include "demon/distributions.hpp"
#include "demon/qubit.hpp"

using namespace demon;
using doctest::Approx;

namespace {

double phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// P(|G| <= u) for G ~ (N(T, T) + N(-T, T)) / 2, written with normal CDFs.
double mixture_abs_cdf(double u, double t) {
  const double sd = std::sqrt(t);
  return 0.5 * (phi((u - t) / sd) - phi((-u - t) / sd)) +
         0.5 * (phi((u + t) / sd) - phi((-u + t) / sd));
}

// Exact draws of Q: G from the Gaussian mixture, Q = 2 ln cosh G.
std::vector<double> exact_q_samples(double t, std::size_t n, std::uint64_t seed) {
  RandomStream rng(seed, 0);
  std::vector<double> out(n);
  for (auto& q : out) {
    const double mean = rng.uniform() <= 0.5 ? t : -t;
    q = arrow_of_u(mean + std::sqrt(t) * rng.normal());
  }
  return out;
}

template <typename F>
double integrate(F f, double lo, double hi) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, lo, hi, 1e-12);
}

constexpr double kTimes[] = {0.05, 0.15, 1.0};

}  // namespace

TEST_CASE("P(Q) normalization and moments") {
  // E[e^{-Q}] reference values from an independent scipy quadrature.
  const double exp_minus_q[] = {0.9523148417697608, 0.8683532022817546, 0.4495995092066728};
  for (int i = 0; i < 3; ++i) {
    const double t = kTimes[i];
    CAPTURE(t);
    CHECK(expect_Q([](double) { return 1.0; }, t) == Approx(1.0).epsilon(1e-10));
    CHECK(expect_Q([](double q) { return std::exp(-0.5 * q); }, t) ==
          Approx(std::exp(-0.5 * t)).epsilon(1e-10));
    CHECK(expect_Q([](double q) { return std::exp(-q); }, t) ==
          Approx(exp_minus_q[i]).epsilon(1e-10));
    // Direct integration in Q, through the Q -> 0 singularity.
    const double direct = integrate([t](double q) { return pdf_Q(q, t); }, 0.0, 60.0);
    CHECK(direct == Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("P(Q) domain and CDF") {
  CHECK_THROWS_AS((void)pdf_Q(0.0, 0.15), DomainError);
  CHECK_THROWS_AS((void)pdf_Q(-1.0, 0.15), DomainError);
  CHECK_THROWS_AS((void)pdf_Q(0.1, 0.0), DomainError);
  for (const double t : kTimes) {
    for (double q = 0.001; q < 10.0; q *= 1.7) {
      CHECK(std::fabs(cdf_Q(q, t) - mixture_abs_cdf(u_of_arrow(q), t)) < 1e-10);
    }
  }
  CHECK(cdf_Q(0.0, 0.15) == 0.0);
}

TEST_CASE("u <-> Q maps") {
  for (double u = 0.0; u < 30.0; u += 0.37) {
    CHECK(u_of_arrow(arrow_of_u(u)) == Approx(u).epsilon(1e-12));
  }
  CHECK(arrow_of_u(0.02) == Approx(3.9997333617746003e-4).epsilon(1e-12));
}

TEST_CASE("work distribution") {
  const double z0 = -0.1;
  SUBCASE("inverse map round trip") {
    for (double q = 1e-6; q <= 20.0; q *= 1.3) {
      CHECK(std::fabs(arrow_of_work(work_of_arrow(q, z0), z0) - q) < 1e-10);
    }
  }
  SUBCASE("normalization over the attainable range") {
    for (const double t : kTimes) {
      const double total = integrate([&](double w) { return pdf_W(w, t, z0); }, 0.0, 0.5);
      CHECK(total == Approx(1.0).epsilon(1e-6));
    }
  }
  SUBCASE("range handling") {
    CHECK(pdf_W(-0.01, 0.15, z0) == 0.0);
    CHECK(pdf_W(0.5, 0.15, z0) == 0.0);
    CHECK(std::isinf(pdf_W(0.0, 0.15, z0)));
    // Most weight near zero work.
    CHECK(pdf_W(0.001, 0.15, z0) > pdf_W(0.01, 0.15, z0));
    CHECK_THROWS_AS((void)pdf_W(0.1, 0.15, 0.0), DomainError);
  }
}

TEST_CASE("measurement heat distribution") {
  const double z0 = -0.1;
  for (const double t : kTimes) {
    const double hi = -0.5 * z0;
    const double total = integrate([&](double q) { return pdf_QM(q, t, z0); }, 0.0, hi);
    CHECK(total == Approx(1.0).epsilon(1e-6));
    const double mean = integrate([&](double q) { return q * pdf_QM(q, t, z0); }, 0.0, hi);
    CHECK(std::fabs(mean - mean_measurement_heat(t, z0)) < 1e-6);
  }
  CHECK(mean_measurement_heat(0.15, -0.1) == Approx(0.003612825683572357).epsilon(1e-12));
  CHECK(arrow_of_heat(0.0, z0) == 0.0);
  CHECK(pdf_QM(0.06, 0.15, z0) == 0.0);
  CHECK(pdf_QM(-1e-3, 0.15, z0) == 0.0);
}

TEST_CASE("entropy-change distribution") {
  for (const double z0 : {-0.05, -0.1, -0.5}) {
    CAPTURE(z0);
    CHECK(arrow_of_entropy(0.0, z0) == 0.0);
    double prev = 1.0;
    for (double q = 1e-3; q < 30.0; q *= 1.1) {
      const double ds = entropy_of_arrow(q, z0);
      CHECK(ds < prev);
      prev = ds;
      // The map flattens as Q grows, so the inverse is checked where it is
      // well conditioned and through the forward map everywhere.
      const double back = arrow_of_entropy(ds, z0);
      CHECK(std::fabs(entropy_of_arrow(back, z0) - ds) < 1e-13);
      if (q < 5.0) CHECK(std::fabs(back - q) < 1e-9);
      // analytic slope vs central difference
      const double h = 1e-6 * std::max(q, 1e-3);
      const double fd = (entropy_of_arrow(q + h, z0) - entropy_of_arrow(q - h, z0)) / (2 * h);
      CHECK(entropy_slope(q, z0) == Approx(fd).epsilon(1e-5));
    }
    const double floor = -entropy_of_length(z0);
    for (const double t : kTimes) {
      const double total = integrate([&](double s) { return pdf_dS(s, t, z0); }, floor, 0.0);
      CHECK(total == Approx(1.0).epsilon(1e-6));
    }
    CHECK(pdf_dS(1e-3, 0.15, z0) == 0.0);
    CHECK(pdf_dS(floor - 1e-3, 0.15, z0) == 0.0);
  }
}

TEST_CASE("tabulated curves") {
  const double t = 0.15;
  const double z0 = -0.1;
  const std::vector<DensityCurve> curves{curve_Q(t), curve_W(t, z0, 1.0), curve_QM(t, z0, 1.0),
                                        curve_dS(t, z0)};
  for (const auto& c : curves) {
    CAPTURE(c.variable);
    REQUIRE(c.grid.size() == 512);
    CHECK(std::is_sorted(c.grid.begin(), c.grid.end()));
    CHECK(std::is_sorted(c.cdf.begin(), c.cdf.end()));
    CHECK(c.cdf.front() == Approx(0.0005).epsilon(1e-6));
    CHECK(c.cdf.back() == Approx(0.9995).epsilon(1e-6));
    for (const double d : c.density) CHECK(d >= 0.0);
    // Away from the integrable singularity at the Q = 0 end, the trapezoid
    // rule on the tabulated density tracks the quadrature CDF.
    const bool singular_last = c.variable == "dS_M";
    const std::size_t a = singular_last ? 0 : 32;
    const std::size_t b = singular_last ? c.grid.size() - 33 : c.grid.size() - 1;
    double area = 0.0;
    for (std::size_t i = a + 1; i <= b; ++i) {
      area += 0.5 * (c.density[i] + c.density[i - 1]) * (c.grid[i] - c.grid[i - 1]);
    }
    CHECK(std::fabs(area - (c.cdf[b] - c.cdf[a])) < 1e-4);
    CHECK(c.quantile(c.cdf_at(c.grid[100])) == Approx(c.grid[100]).epsilon(1e-9));
  }
  CHECK(curves[1].omega0 == 1.0);
  CHECK(curves[3].z0 == z0);

  const auto raw = curve_from_density("x", {0.0, 0.5, 1.0}, {1.0, 1.0, 1.0});
  CHECK(raw.cdf.back() == Approx(1.0));
  CHECK(raw.cdf_at(0.25) == Approx(0.25));
  CHECK_THROWS_AS((void)curve_from_density("x", {1.0, 0.0}, {1.0, 1.0}), DomainError);
}

TEST_CASE("histogram") {
  const auto q = exact_q_samples(0.15, 10000, 5);
  const Histogram h(q, 100);
  std::size_t sum = 0;
  double integral = 0.0;
  for (std::size_t i = 0; i < h.bins(); ++i) {
    sum += h.counts()[i];
    integral += h.density(i) * h.width();
  }
  CHECK(sum == h.total());
  CHECK(h.total() == q.size());
  CHECK(std::fabs(integral - 1.0) < 1e-9);

  const std::vector<double> v{0.1, 0.2, 0.3, 5.0};
  const Histogram clipped(v, 3, 0.0, 0.3);
  CHECK(clipped.total() == 3);
  CHECK_THROWS_AS(Histogram(v, 3, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(Histogram(std::vector<double>{}, 3), DomainError);
}

TEST_CASE("KS distance") {
  const double t = 0.15;
  const auto curve = curve_Q(t);

  SUBCASE("samples from the law itself") {
    const auto q = exact_q_samples(t, 20000, 9);
    const double d = ks_distance(q, curve);
    CHECK(d < 0.015);
    // Against the exact CDF too.
    CHECK(ks_distance(q, [t](double x) { return mixture_abs_cdf(u_of_arrow(x), t); }) < 0.015);
    CHECK(ks_distance(Histogram(q, 200), curve) < 0.015);
  }
  SUBCASE("degenerate samples") {
    const std::vector<double> same(1000, curve.quantile(0.5));
    CHECK(ks_distance(same, curve) >= 0.5 - 1e-3);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS((void)ks_distance(std::vector<double>{}, curve), DomainError);
    CHECK_THROWS_AS((void)ks_distance(std::vector<double>(50, 0.1), curve), DomainError);
  }
  SUBCASE("deterministic") {
    const auto q = exact_q_samples(t, 500, 1);
    CHECK(ks_distance(q, curve) == ks_distance(q, curve));
  }
}

TEST_CASE("change of variables reproduces transformed samples") {
  const double t = 0.15;
  const double z0 = -0.1;
  RandomStream rng(77, 0);
  const auto q = sample_curve(curve_Q(t), 100000, rng);
  std::vector<double> w, qm, ds;
  for (const double v : q) {
    w.push_back(work_of_arrow(v, z0));
    qm.push_back(heat_of_arrow(v, z0));
    ds.push_back(entropy_of_arrow(v, z0));
  }
  CHECK(ks_distance(w, curve_W(t, z0)) < 0.02);
  CHECK(ks_distance(qm, curve_QM(t, z0)) < 0.02);
  CHECK(ks_distance(ds, curve_dS(t, z0)) < 0.02);
}
