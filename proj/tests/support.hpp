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

// Seeded generators shared by the property tests.

#include <array>
#include <cstdint>
#include <numbers>

#include "xepu/linalg.hpp"
#include "xepu/rng.hpp"
#include "xepu/states.hpp"

namespace xepu::testing {

inline CMat4 random_hermitian(Rng& rng, double scale = 1.0) {
  CMat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = cplx(rng.normal(), rng.normal());
  return scale * 0.5 * (m + m.adjoint());
}

inline CMat4 random_unitary(Rng& rng) {
  CMat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  Eigen::HouseholderQR<CMat4> qr(g);
  return qr.householderQ() * CMat4::Identity();
}

inline CMat2 random_unitary2(Rng& rng) {
  const double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double b = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double c = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double t = rng.uniform(0.0, std::numbers::pi / 2.0);
  CMat2 u;
  u << std::polar(std::cos(t), a), std::polar(std::sin(t), b),
      -std::polar(std::sin(t), -b + c), std::polar(std::cos(t), -a + c);
  return u;
}

inline Spectrum random_spectrum(Rng& rng) {
  const double h = std::numbers::pi / 2.0;
  return spectrum_from_hyperspherical({rng.uniform(0.0, h), rng.uniform(0.0, h), rng.uniform(0.0, h)});
}

inline double max_abs_diff(const CMat4& a, const CMat4& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace xepu::testing
