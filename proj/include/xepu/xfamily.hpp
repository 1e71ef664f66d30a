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
#include <cmath>
#include <string>

#include "xepu/concurrence.hpp"
#include "xepu/linalg.hpp"
#include "xepu/states.hpp"

namespace xepu {

namespace tol {
/// Concurrence inputs this far above the spectral ceiling are clamped to it.
inline constexpr double kCeilingSlack = 1e-12;
}  // namespace tol

/// One member of the spectrum-and-concurrence X family.
struct XConstruction {
  Spectrum spec;
  double c;      // target concurrence
  double q;      // (l1 - l3)^2 - (c + 2 sqrt(l2 l4))^2
  double omega;  // max(0, q)
  DensityMatrix rho_x;
};

struct EpuResult {
  CMat4 u;
  DensityMatrix rho_x;
  double transform_residual;   // ||U rho U^H - rho_x||_F
  double unitarity_residual;   // ||U^H U - I||_F
};

namespace detail {

inline double checked_concurrence(const Spectrum& spec, double c) {
  const double ceiling = mems_concurrence(spec);
  if (!(c >= 0.0) || c > ceiling + tol::kCeilingSlack)
    throw Error(ErrorKind::UnphysicalConcurrence,
                "concurrence " + std::to_string(c) + " outside [0, " + std::to_string(ceiling) +
                    "] for this spectrum",
                c);
  return std::min(c, ceiling);
}

inline double q_unchecked(const Spectrum& spec, double c) {
  const double gap = spec[0] - spec[2];
  const double reach = c + 2.0 * std::sqrt(spec[1] * spec[3]);
  return gap * gap - reach * reach;
}

inline CMat4 x_matrix(double d1, double d2, double d3, double d4, double corner) {
  CMat4 m = CMat4::Zero();
  m(0, 0) = d1;
  m(1, 1) = d2;
  m(2, 2) = d3;
  m(3, 3) = d4;
  m(0, 3) = m(3, 0) = corner;
  return m;
}

}  // namespace detail

/// Q for a spectrum and concurrence. Throws UnphysicalConcurrence when c
/// exceeds the MEMS ceiling by more than 1e-12.
inline double q_value(const Spectrum& spec, double c) {
  return detail::q_unchecked(spec, detail::checked_concurrence(spec, c));
}

/// X state with the given spectrum and concurrence, in the unified form
///
///   1/2 [ l1+l3+sqrt(W)        .     .   sqrt((l1-l3)^2-W) ]
///       [       .            2 l2    .          .           ]
///       [       .              .   2 l4         .           ]
///       [ sqrt((l1-l3)^2-W)    .     .   l1+l3-sqrt(W)     ]
///
/// with W = max(0, Q). Off-X entries are exact zeros.
inline XConstruction build_x_state(const Spectrum& spec, double c) {
  c = detail::checked_concurrence(spec, c);
  const double q = detail::q_unchecked(spec, c);
  const double omega = std::max(0.0, q);
  const double gap = spec[0] - spec[2];
  const double root_omega = std::sqrt(omega);
  const double corner = std::sqrt(std::max(0.0, gap * gap - omega));
  const double sum13 = spec[0] + spec[2];
  const CMat4 m = detail::x_matrix(0.5 * (sum13 + root_omega), spec[1], spec[3],
                                   0.5 * (sum13 - root_omega), 0.5 * corner);
  return {spec, c, q, omega, validate(m)};
}

/// Same state written as two explicit branches on the sign of Q. Kept as an
/// independent cross-check of build_x_state.
inline XConstruction build_x_state_cases(const Spectrum& spec, double c) {
  c = detail::checked_concurrence(spec, c);
  const double q = detail::q_unchecked(spec, c);
  const double sum13 = spec[0] + spec[2];
  CMat4 m;
  if (q >= 0.0) {
    const double root_q = std::sqrt(q);
    const double corner = c + 2.0 * std::sqrt(spec[1] * spec[3]);
    m = detail::x_matrix(0.5 * (sum13 + root_q), spec[1], spec[3], 0.5 * (sum13 - root_q),
                         0.5 * corner);
  } else {
    m = detail::x_matrix(0.5 * sum13, spec[1], spec[3], 0.5 * sum13, 0.5 * (spec[0] - spec[2]));
  }
  return {spec, c, q, std::max(0.0, q), validate(m)};
}

/// Maximally entangled mixed state for a spectrum.
inline DensityMatrix build_mems(const Spectrum& spec) {
  const double sum13 = spec[0] + spec[2];
  return validate(
      detail::x_matrix(0.5 * sum13, spec[1], spec[3], 0.5 * sum13, 0.5 * (spec[0] - spec[2])));
}

/// Unitary U = E_x E_rho^H taking rho to the X state of equal spectrum and
/// concurrence, where E_a is the eigenvector matrix of a with columns in
/// descending eigenvalue order.
inline EpuResult build_epu(const DensityMatrix& rho) {
  const Spectrum spec = spectrum_of(rho);
  const double c = concurrence_general(rho).c;
  XConstruction xc = build_x_state(spec, c);
  const HermEig<4> eig_rho = hermitian_eig<4>(rho.mat());
  const HermEig<4> eig_x = hermitian_eig<4>(xc.rho_x.mat());
  const CMat4 u = eig_x.vectors * eig_rho.vectors.adjoint();
  const double transform = (u * rho.mat() * u.adjoint() - xc.rho_x.mat()).norm();
  return {u, xc.rho_x, transform, unitarity_residual<4>(u)};
}

/// (sigma_x (x) I): swaps basis states 1 <-> 3 and 2 <-> 4.
inline CMat4 local_swap_unitary() { return kron(pauli::x(), pauli::identity()); }

/// Local-unitary image of rho_x with the corner coherence moved into the
/// central block.
inline DensityMatrix swap_variant(const XConstruction& xc) {
  const CMat4 ul = local_swap_unitary();
  return validate(ul * xc.rho_x.mat() * ul.adjoint());
}

/// Physical-by-construction parameterization: C = eta * C_MEMS(spec).
inline XConstruction parameterize(const Spectrum& spec, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0))
    throw Error(ErrorKind::OutOfRange, "eta must be in [0, 1], got " + std::to_string(eta), eta);
  return build_x_state(spec, eta * mems_concurrence(spec));
}

}  // namespace xepu
