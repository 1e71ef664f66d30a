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

// Spectral route to the X family: real X-form eigenvector sets, the
// concurrence landscape over their two mixing angles, and the closed-form
// angle that reproduces a target concurrence.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "xepu/concurrence.hpp"
#include "xepu/states.hpp"
#include "xepu/xfamily.hpp"

namespace xepu {

/// Which eigenvalue gets which X-form eigenvector.
///   PairsFirst: (c_a,.,.,s_a), (s_a,.,.,-c_a), (.,c_b,s_b,.), (.,s_b,-c_b,.)
///   Interleaved: (c_a,.,.,s_a), (.,c_b,s_b,.), (s_a,.,.,-c_a), (.,s_b,-c_b,.)
/// Only the interleaved order reaches every spectrum/concurrence pair.
enum class EigenOrder { PairsFirst, Interleaved };

struct AnsatzParams {
  double alpha = 0.0;
  double beta = 0.0;
  EigenOrder order = EigenOrder::Interleaved;
};

namespace detail {
inline void check_angle(double t, const char* name) {
  if (!(t >= 0.0 && t <= std::numbers::pi / 2.0))
    throw Error(ErrorKind::OutOfRange, std::string(name) + " outside [0, pi/2]", t);
}
}  // namespace detail

/// Real orthogonal matrix whose columns are the four X-form eigenvectors.
inline CMat4 x_eigenvectors(const AnsatzParams& p) {
  detail::check_angle(p.alpha, "alpha");
  detail::check_angle(p.beta, "beta");
  const double ca = std::cos(p.alpha), sa = std::sin(p.alpha);
  const double cb = std::cos(p.beta), sb = std::sin(p.beta);
  CVec<4> a_plus, a_minus, b_plus, b_minus;
  a_plus << ca, 0.0, 0.0, sa;
  a_minus << sa, 0.0, 0.0, -ca;
  b_plus << 0.0, cb, sb, 0.0;
  b_minus << 0.0, sb, -cb, 0.0;
  CMat4 v;
  if (p.order == EigenOrder::PairsFirst)
    v << a_plus, a_minus, b_plus, b_minus;
  else
    v << a_plus, b_plus, a_minus, b_minus;
  return v;
}

/// eps diag(lambda) eps^T for the chosen eigenvector set.
inline DensityMatrix assemble_rho_x(const Spectrum& spec, const AnsatzParams& p) {
  const CMat4 v = x_eigenvectors(p);
  Eigen::Vector4cd l;
  l << spec[0], spec[1], spec[2], spec[3];
  CMat4 m = v * l.asDiagonal() * v.adjoint();
  // The product leaves rounding-level asymmetry and off-X dust at exact
  // zeros of v; both are removed so the result is an exact X matrix.
  m = 0.5 * (m + m.adjoint());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && i + j != 3) m(i, j) = 0.0;
  return validate(m);
}

/// Concurrence of assemble_rho_x(spec, {alpha, beta, Interleaved}) in
/// closed form.
inline double c_surface(const Spectrum& spec, double alpha, double beta) {
  detail::check_angle(alpha, "alpha");
  detail::check_angle(beta, "beta");
  const double ca2 = std::cos(alpha) * std::cos(alpha), sa2 = std::sin(alpha) * std::sin(alpha);
  const double cb2 = std::cos(beta) * std::cos(beta), sb2 = std::sin(beta) * std::sin(beta);
  const double l1 = spec[0], l2 = spec[1], l3 = spec[2], l4 = spec[3];
  const double inner = 0.5 * (l2 - l4) * std::sin(2.0 * beta) -
                       std::sqrt((l1 * sa2 + l3 * ca2) * (l1 * ca2 + l3 * sa2));
  const double outer = 0.5 * (l1 - l3) * std::sin(2.0 * alpha) -
                       std::sqrt((l2 * sb2 + l4 * cb2) * (l2 * cb2 + l4 * sb2));
  return 2.0 * std::max({0.0, inner, outer});
}

/// Mixing angle alpha in [0, pi/4] that, with beta = 0, gives concurrence c.
/// Requires Q >= 0; the l1 == l3 limit resolves to pi/4.
inline double alpha_star(const Spectrum& spec, double c) {
  const double q = q_value(spec, c);
  if (q < 0.0)
    throw Error(ErrorKind::QNegative, "alpha solution needs Q >= 0, got Q = " + std::to_string(q), q);
  c = std::min(c, mems_concurrence(spec));
  const double gap = spec[0] - spec[2];
  if (std::abs(gap) <= 1e-12) return std::numbers::pi / 4.0;
  double arg = (c + 2.0 * std::sqrt(spec[1] * spec[3])) / gap;
  if (arg > 1.0 + 1e-12)
    throw Error(ErrorKind::QNegative, "asin argument " + std::to_string(arg) + " exceeds 1", arg);
  arg = std::clamp(arg, 0.0, 1.0);
  return 0.5 * std::asin(arg);
}

}  // namespace xepu
