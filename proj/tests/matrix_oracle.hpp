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

// Dense 2x2 complex-matrix reference used to check the Bloch-vector code
// paths. Nothing here calls into the library's update formulas.

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "demon/qubit.hpp"

namespace oracle {

using Mat = Eigen::Matrix2cd;
using cd = std::complex<double>;

inline Mat identity() { return Mat::Identity(); }
inline Mat sigma_x() {
  Mat m;
  m << 0, 1, 1, 0;
  return m;
}
inline Mat sigma_y() {
  Mat m;
  m << 0, cd(0, -1), cd(0, 1), 0;
  return m;
}
inline Mat sigma_z() {
  Mat m;
  m << 1, 0, 0, -1;
  return m;
}

inline Mat density(const demon::QubitState& s) {
  return 0.5 * (identity() + s.x * sigma_x() + s.y * sigma_y() + s.z * sigma_z());
}

inline demon::QubitState bloch(const Mat& rho) {
  return {(rho * sigma_x()).trace().real(), (rho * sigma_y()).trace().real(),
          (rho * sigma_z()).trace().real()};
}

/// Discrete measurement operators as written, M_pm = (1/2)[(sk + sc) I pm (sk - sc) sx].
inline Mat discrete(double kappa, int sign) {
  const double sk = std::sqrt(kappa);
  const double sc = std::sqrt(1.0 - kappa);
  return 0.5 * ((sk + sc) * identity() + sign * (sk - sc) * sigma_x());
}

/// Continuous forward operator (dt/2 pi tau)^{1/4} exp(-dt (r - sx)^2 / 4 tau),
/// built with a dense matrix exponential.
inline Mat continuous(double r, double dt_over_tau) {
  const Mat a = r * identity() - sigma_x();
  const Mat gen = -dt_over_tau / 4.0 * (a * a);
  return std::pow(dt_over_tau / (2.0 * std::numbers::pi), 0.25) * gen.exp();
}

/// exp(-i theta sigma_y / 2).
inline Mat rotation_y(double theta) {
  const Mat gen = cd(0, -0.5 * theta) * sigma_y();
  return gen.exp();
}

/// Energy with H = hbar*omega0 |e><e| where the excited state has z = +1.
inline double energy(const Mat& rho) {
  Mat h;
  h << 1, 0, 0, 0;
  return (h * rho).trace().real();
}

inline double entropy(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  double s = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double l = es.eigenvalues()[i];
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

inline Mat sandwich(const Mat& m, const Mat& rho) { return m * rho * m.adjoint(); }

}  // namespace oracle
