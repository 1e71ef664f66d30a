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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "xepu/concurrence.hpp"
#include "xepu/spectral_ansatz.hpp"
#include "xepu/xfamily.hpp"

namespace xepu {
namespace {

using testing::max_abs_diff;

constexpr double kHalfPi = std::numbers::pi / 2.0;

Spectrum spec4(double a, double b, double c, double d) { return Spectrum::from_values({a, b, c, d}); }

// Entrywise closed form of eps diag(l) eps^T for both eigenvector orders.
CMat4 closed_form(const Spectrum& s, double a, double b, EigenOrder order) {
  const double ca = std::cos(a), sa = std::sin(a), cb = std::cos(b), sb = std::sin(b);
  // Eigenvalues paired with the outer (+, -) and inner (+, -) vectors.
  const bool pairs = order == EigenOrder::PairsFirst;
  const double op = s[0], om = pairs ? s[1] : s[2];
  const double ip = pairs ? s[2] : s[1], im = s[3];
  CMat4 m = CMat4::Zero();
  m(0, 0) = op * ca * ca + om * sa * sa;
  m(3, 3) = op * sa * sa + om * ca * ca;
  m(0, 3) = m(3, 0) = (op - om) * ca * sa;
  m(1, 1) = ip * cb * cb + im * sb * sb;
  m(2, 2) = ip * sb * sb + im * cb * cb;
  m(1, 2) = m(2, 1) = (ip - im) * cb * sb;
  return m;
}

TEST(XEigenvectors, ZeroAnglesInterleaved) {
  const CMat4 v = x_eigenvectors({0.0, 0.0, EigenOrder::Interleaved});
  CMat4 want = CMat4::Zero();
  want(0, 0) = 1.0;
  want(1, 1) = 1.0;
  want(3, 2) = -1.0;
  want(2, 3) = -1.0;
  EXPECT_EQ(v, want);
}

TEST(XEigenvectors, OrdersDifferOnlyByColumnSwap) {
  const CMat4 a = x_eigenvectors({0.3, 0.9, EigenOrder::PairsFirst});
  const CMat4 b = x_eigenvectors({0.3, 0.9, EigenOrder::Interleaved});
  EXPECT_EQ(a.col(0), b.col(0));
  EXPECT_EQ(a.col(1), b.col(2));
  EXPECT_EQ(a.col(2), b.col(1));
  EXPECT_EQ(a.col(3), b.col(3));
}

TEST(XEigenvectors, OrthogonalProperty) {
  Rng rng(61);
  for (int i = 0; i < 10000; ++i) {
    const AnsatzParams p{rng.uniform(0.0, kHalfPi), rng.uniform(0.0, kHalfPi),
                         i % 2 ? EigenOrder::PairsFirst : EigenOrder::Interleaved};
    ASSERT_LE(unitarity_residual<4>(x_eigenvectors(p)), 1e-14);
  }
}

TEST(XEigenvectors, RejectsAngleOutsideDomain) {
  EXPECT_THROW(x_eigenvectors({-0.1, 0.0, EigenOrder::Interleaved}), Error);
  EXPECT_THROW(x_eigenvectors({0.0, 2.0, EigenOrder::Interleaved}), Error);
}

TEST(AssembleRhoX, MatchesClosedForm) {
  Rng rng(62);
  for (int i = 0; i < 10000; ++i) {
    const Spectrum s = testing::random_spectrum(rng);
    const double a = rng.uniform(0.0, kHalfPi), b = rng.uniform(0.0, kHalfPi);
    for (EigenOrder order : {EigenOrder::PairsFirst, EigenOrder::Interleaved}) {
      const DensityMatrix m = assemble_rho_x(s, {a, b, order});
      ASSERT_LE(max_abs_diff(m.mat(), closed_form(s, a, b, order)), 1e-14) << "i " << i;
      ASSERT_EQ(off_x_magnitude(m.mat()), 0.0);
    }
  }
}

TEST(AssembleRhoX, QuarterTurnGivesMems) {
  const Spectrum s = spec4(0.5, 0.3, 0.2, 0.0);
  const DensityMatrix m = assemble_rho_x(s, {std::numbers::pi / 4.0, 0.0, EigenOrder::Interleaved});
  EXPECT_LE(max_abs_diff(m.mat(), build_mems(s).mat()), 1e-15);
}

TEST(AssembleRhoX, ZeroAnglesGiveDiagonal) {
  const DensityMatrix m = assemble_rho_x(spec4(0.4, 0.3, 0.2, 0.1), {0.0, 0.0, EigenOrder::Interleaved});
  CMat4 want = CMat4::Zero();
  want.diagonal() << 0.4, 0.3, 0.1, 0.2;
  EXPECT_LE(max_abs_diff(m.mat(), want), 1e-16);
}

TEST(CSurface, AgreesWithAssembledState) {
  Rng rng(63);
  for (int i = 0; i < 10000; ++i) {
    const Spectrum s = testing::random_spectrum(rng);
    const double a = rng.uniform(0.0, kHalfPi), b = rng.uniform(0.0, kHalfPi);
    const DensityMatrix m = assemble_rho_x(s, {a, b, EigenOrder::Interleaved});
    ASSERT_NEAR(c_surface(s, a, b), concurrence_x(m).c, 1e-12) << "i " << i;
  }
}

TEST(CSurface, PureProductAndBell) {
  const Spectrum pure = spec4(1, 0, 0, 0);
  EXPECT_NEAR(c_surface(pure, std::numbers::pi / 4.0, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(c_surface(pure, 0.0, 0.3), 0.0, 1e-15);
  EXPECT_NEAR(c_surface(pure, 0.3, 0.0), std::sin(0.6), 1e-15);
}

TEST(AlphaStar, Examples) {
  EXPECT_NEAR(alpha_star(spec4(1, 0, 0, 0), 1.0), std::numbers::pi / 4.0, 1e-15);
  EXPECT_NEAR(alpha_star(spec4(1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0), 0.0), std::numbers::pi / 4.0, 1e-15);
  const double a = alpha_star(spec4(0.5, 0.3, 0.2, 0.0), 0.1);
  EXPECT_NEAR(a, 0.5 * std::asin(1.0 / 3.0), 1e-15);
  EXPECT_NEAR(a, 0.16991845, 1e-8);
}

TEST(AlphaStar, ReproducesTargetProperty) {
  Rng rng(64);
  for (int i = 0; i < 10000; ++i) {
    const Spectrum s = testing::random_spectrum(rng);
    const double c = rng.uniform(0.0, mems_concurrence(s));
    if (q_value(s, c) < 0.0) continue;
    const double a = alpha_star(s, c);
    ASSERT_GE(a, 0.0);
    ASSERT_LE(a, std::numbers::pi / 4.0 + 1e-15);
    ASSERT_NEAR(c_surface(s, a, 0.0), c, 1e-9) << "i " << i;
  }
}

TEST(AlphaStar, RejectsNegativeQ) {
  try {
    alpha_star(spec4(0.25, 0.25, 0.25, 0.25), 0.0);
    FAIL() << "expected QNegative";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::QNegative);
    EXPECT_NEAR(e.measured(), -0.25, 1e-15);
  }
}

}  // namespace
}  // namespace xepu
