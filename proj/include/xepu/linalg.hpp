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
#include <complex>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "xepu/error.hpp"

namespace xepu {

using cplx = std::complex<double>;

template <int N>
using CMat = Eigen::Matrix<cplx, N, N>;
template <int N>
using CVec = Eigen::Matrix<cplx, N, 1>;

using CMat2 = CMat<2>;
using CMat4 = CMat<4>;

namespace tol {
/// Hermiticity precondition for the eigensolver and density-matrix checks.
inline constexpr double kHermitian = 1e-10;
/// Eigenvalues in [-kClip, 0) are treated as rounding dust and clipped to 0.
inline constexpr double kClip = 1e-10;
/// Eigenvalues closer than this are one degenerate cluster.
inline constexpr double kCluster = 1e-10;
/// Eigenvalues of a unit-trace state at or below this are rounding dust
/// from a rank-deficient construction (observed dust is ~3e-16).
inline constexpr double kNoiseFloor = 1e-14;
}  // namespace tol

namespace pauli {
inline CMat2 identity() { return CMat2::Identity(); }
inline CMat2 x() {
  CMat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
inline CMat2 y() {
  CMat2 m;
  m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  return m;
}
inline CMat2 z() {
  CMat2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

/// Kronecker product of two single-qubit operators, first factor on the
/// high-order index.
inline CMat4 kron(const CMat2& a, const CMat2& b) {
  CMat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

template <int N>
double hermiticity_residual(const CMat<N>& m) {
  return (m - m.adjoint()).norm();
}

template <int N>
bool all_finite(const CMat<N>& m) {
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

template <int N>
struct HermEig {
  std::array<double, N> values{};  // descending
  CMat<N> vectors;                 // column k pairs with values[k]
};

namespace detail {

inline constexpr int kMaxSweeps = 100;
inline constexpr double kOffThreshold = 1e-14;

template <int N>
double off_norm(const CMat<N>& a) {
  double s = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Rotate column k so its largest-magnitude entry is real and positive.
// Near-ties (within 1e-12) go to the lowest row index.
template <int N>
void fix_phase(CMat<N>& v, int k) {
  double best = 0.0;
  for (int i = 0; i < N; ++i) best = std::max(best, std::abs(v(i, k)));
  if (best == 0.0) return;
  for (int i = 0; i < N; ++i) {
    if (std::abs(v(i, k)) >= best - 1e-12) {
      const cplx phase = std::conj(v(i, k)) / std::abs(v(i, k));
      v.col(k) *= phase;
      v(i, k) = cplx(v(i, k).real(), 0.0);
      return;
    }
  }
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Eigenvalues come back sorted descending. Degenerate clusters
/// (consecutive gap below tol::kCluster) are re-orthonormalized with
/// modified Gram-Schmidt, and every column is phase-fixed, so the returned
/// basis is a deterministic function of the input.
template <int N>
HermEig<N> hermitian_eig(const CMat<N>& m) {
  const double herm = hermiticity_residual(m);
  if (!(herm <= tol::kHermitian))
    throw Error(ErrorKind::NotHermitian,
                "hermiticity residual " + std::to_string(herm) + " exceeds 1e-10", herm);

  CMat<N> a = 0.5 * (m + m.adjoint());
  CMat<N> v = CMat<N>::Identity();
  const double scale = std::max(a.norm(), 1e-300);

  int sweep = 0;
  for (; sweep < detail::kMaxSweeps; ++sweep) {
    if (detail::off_norm<N>(a) <= detail::kOffThreshold * scale) break;
    for (int p = 0; p < N - 1; ++p) {
      for (int q = p + 1; q < N; ++q) {
        const double apq = std::abs(a(p, q));
        if (apq == 0.0) continue;
        const cplx phase = a(p, q) / apq;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J = [[c, s], [-s conj(phase), c conj(phase)]] on (p, q); A <- J^H A J.
        const cplx jqp = -s * std::conj(phase);
        const cplx jqq = c * std::conj(phase);
        for (int k = 0; k < N; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * c + akq * jqp;
          a(k, q) = akp * s + akq * jqq;
        }
        for (int k = 0; k < N; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = s * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (int k = 0; k < N; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * c + vkq * jqp;
          v(k, q) = vkp * s + vkq * jqq;
        }
      }
    }
  }
  if (sweep == detail::kMaxSweeps && detail::off_norm<N>(a) > detail::kOffThreshold * scale)
    throw Error(ErrorKind::ConvergenceFailure, "Jacobi sweep budget exhausted", detail::off_norm<N>(a));

  std::array<int, N> order;
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

  HermEig<N> out;
  for (int k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }

  for (int begin = 0; begin < N;) {
    int end = begin + 1;
    while (end < N && out.values[end - 1] - out.values[end] < tol::kCluster) ++end;
    if (end - begin > 1) {
      for (int k = begin; k < end; ++k) {
        for (int j = begin; j < k; ++j)
          out.vectors.col(k) -= out.vectors.col(j).dot(out.vectors.col(k)) * out.vectors.col(j);
        out.vectors.col(k).normalize();
      }
    }
    begin = end;
  }
  for (int k = 0; k < N; ++k) detail::fix_phase<N>(out.vectors, k);
  return out;
}

/// Hermitian PSD square root. Eigenvalues in [-1e-10, 0) are clipped to 0.
template <int N>
CMat<N> psd_sqrt(const CMat<N>& m) {
  const HermEig<N> eig = hermitian_eig<N>(m);
  const double lowest = eig.values[N - 1];
  if (lowest < -tol::kClip)
    throw Error(ErrorKind::NotPSD, "eigenvalue " + std::to_string(lowest) + " below -1e-10", lowest);
  Eigen::Matrix<double, N, 1> roots;
  for (int k = 0; k < N; ++k) roots(k) = std::sqrt(std::max(eig.values[k], 0.0));
  return eig.vectors * roots.template cast<cplx>().asDiagonal() * eig.vectors.adjoint();
}

template <int N>
double unitarity_residual(const CMat<N>& m) {
  return (m.adjoint() * m - CMat<N>::Identity()).norm();
}

template <int N>
bool is_unitary(const CMat<N>& m, double tolerance) {
  return unitarity_residual<N>(m) <= tolerance;
}

}  // namespace xepu
