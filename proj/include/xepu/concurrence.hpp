// Copyright 2026 The xepu Authors
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

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "xepu/linalg.hpp"
#include "xepu/states.hpp"

namespace xepu {

namespace tol {
/// Default magnitude below which off-X entries count as zero.
inline constexpr double kXShape = 1e-10;
}  // namespace tol

struct ConcurrenceValue {
  double c = 0.0;
  // Descending xi values; only the general path fills these.
  std::optional<std::array<double, 4>> xis;
};

/// sigma_y (x) sigma_y. Real, symmetric, and maps |1> <-> -|4>, |2> <-> |3>.
inline CMat4 sigma_yy() { return kron(pauli::y(), pauli::y()); }

/// (sigma_y (x) sigma_y) conj(rho) (sigma_y (x) sigma_y).
inline CMat4 spin_flip(const DensityMatrix& rho) {
  const CMat4 yy = sigma_yy();
  return yy * rho.mat().conjugate() * yy;
}

/// Wootters concurrence max{0, xi1 - xi2 - xi3 - xi4}.
///
/// The xi values (square roots of the eigenvalues of sqrt(rho) rho~ sqrt(rho))
/// are taken as the singular values of tau = W^T (sigma_y (x) sigma_y) W,
/// where rho = W W^H and W = V sqrt(Lambda) from the eigendecomposition of
/// rho. Singular values come from the eigenvalues of the Hermitian dilation
/// [[0, tau], [tau^H, 0]], which carry absolute rather than square-root
/// rounding error. Eigenvalues of rho at or below tol::kNoiseFloor are
/// treated as exact zeros.
inline ConcurrenceValue concurrence_general(const DensityMatrix& rho) {
  const HermEig<4> eig = hermitian_eig<4>(rho.mat());
  Eigen::Vector4cd weights;
  for (int k = 0; k < 4; ++k) {
    const double lambda = eig.values[k];
    if (lambda < -tol::kClip)
      throw Error(ErrorKind::NotPSD, "eigenvalue " + std::to_string(lambda) + " below -1e-10", lambda);
    weights(k) = lambda > tol::kNoiseFloor ? std::sqrt(lambda) : 0.0;
  }
  const CMat4 w = eig.vectors * weights.asDiagonal();
  const CMat4 tau = w.transpose() * sigma_yy() * w;

  CMat<8> dilation = CMat<8>::Zero();
  dilation.topRightCorner<4, 4>() = tau;
  dilation.bottomLeftCorner<4, 4>() = tau.adjoint();
  const HermEig<8> sv = hermitian_eig<8>(dilation);

  std::array<double, 4> xi{};
  for (int k = 0; k < 4; ++k) xi[k] = std::max(sv.values[k], 0.0);
  return {std::max(0.0, xi[0] - xi[1] - xi[2] - xi[3]), xi};
}

/// Largest magnitude among the eight entries outside the diagonal and
/// antidiagonal.
inline double off_x_magnitude(const CMat4& m) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && i + j != 3) worst = std::max(worst, std::abs(m(i, j)));
  return worst;
}

/// Closed-form concurrence of an X state,
/// 2 max{0, |rho32| - sqrt(rho44 rho11), |rho41| - sqrt(rho33 rho22)}.
inline ConcurrenceValue concurrence_x(const DensityMatrix& rho, double xtol = tol::kXShape) {
  const CMat4& m = rho.mat();
  const double off = off_x_magnitude(m);
  if (off > xtol)
    throw Error(ErrorKind::NotXState, "largest off-X magnitude " + std::to_string(off), off);
  const double d1 = std::max(m(0, 0).real(), 0.0);
  const double d2 = std::max(m(1, 1).real(), 0.0);
  const double d3 = std::max(m(2, 2).real(), 0.0);
  const double d4 = std::max(m(3, 3).real(), 0.0);
  const double inner = std::abs(m(2, 1)) - std::sqrt(d4 * d1);
  const double outer = std::abs(m(3, 0)) - std::sqrt(d3 * d2);
  return {2.0 * std::max({0.0, inner, outer}), std::nullopt};
}

/// lambda1 - lambda3 - 2 sqrt(lambda2 lambda4); negative means every state
/// with this spectrum is separable.
inline double preconcurrence(const Spectrum& spec) {
  return spec[0] - spec[2] - 2.0 * std::sqrt(spec[1] * spec[3]);
}

/// Largest concurrence reachable by any state with this spectrum.
inline double mems_concurrence(const Spectrum& spec) { return std::max(0.0, preconcurrence(spec)); }

}  // namespace xepu
