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
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <string_view>

#include "xepu/error.hpp"
#include "xepu/linalg.hpp"
#include "xepu/rng.hpp"

namespace xepu {

namespace tol {
inline constexpr double kTrace = 1e-10;
/// Eigenvalues above this count toward the rank of a sampled state.
inline constexpr double kRank = 1e-12;
}  // namespace tol

/// Four eigenvalues of a two-qubit state, descending and summing to one.
class Spectrum {
 public:
  /// Sorts, clips dust in [-1e-10, 0) to zero, and renormalizes when the
  /// sum is within 1e-10 of one.
  static Spectrum from_values(std::array<double, 4> raw) {
    for (double x : raw)
      if (!std::isfinite(x)) throw Error(ErrorKind::OutOfRange, "non-finite eigenvalue");
    std::sort(raw.begin(), raw.end(), std::greater<>());
    if (raw[3] < -tol::kClip)
      throw Error(ErrorKind::NotPSD, "eigenvalue " + std::to_string(raw[3]) + " below -1e-10", raw[3]);
    for (double& x : raw) x = std::max(x, 0.0);
    const double sum = raw[0] + raw[1] + raw[2] + raw[3];
    if (std::abs(sum - 1.0) > tol::kTrace)
      throw Error(ErrorKind::NotUnitTrace, "eigenvalues sum to " + std::to_string(sum), sum - 1.0);
    if (sum != 1.0)
      for (double& x : raw) x /= sum;
    return Spectrum(raw);
  }

  double operator[](int k) const { return lambda_[static_cast<std::size_t>(k)]; }
  const std::array<double, 4>& values() const noexcept { return lambda_; }

  double sum() const { return lambda_[0] + lambda_[1] + lambda_[2] + lambda_[3]; }
  double purity() const {
    return lambda_[0] * lambda_[0] + lambda_[1] * lambda_[1] + lambda_[2] * lambda_[2] +
           lambda_[3] * lambda_[3];
  }

 private:
  explicit Spectrum(const std::array<double, 4>& l) : lambda_(l) {}
  std::array<double, 4> lambda_;
};

/// A validated two-qubit density matrix. Only obtainable through validate(),
/// so holding one means the Hermitian, unit-trace and PSD checks passed.
class DensityMatrix {
 public:
  const CMat4& mat() const noexcept { return mat_; }
  cplx operator()(int row, int col) const { return mat_(row, col); }

  friend DensityMatrix validate(const CMat4& m);

 private:
  explicit DensityMatrix(const CMat4& m) : mat_(m) {}
  CMat4 mat_;
};

inline DensityMatrix validate(const CMat4& m) {
  if (!all_finite<4>(m)) throw Error(ErrorKind::NotHermitian, "matrix has non-finite entries");
  const double herm = hermiticity_residual<4>(m);
  if (!(herm <= tol::kHermitian))
    throw Error(ErrorKind::NotHermitian, "hermiticity residual " + std::to_string(herm), herm);
  const double trace_dev = std::abs(m.trace() - cplx(1.0, 0.0));
  if (!(trace_dev <= tol::kTrace))
    throw Error(ErrorKind::NotUnitTrace, "|tr - 1| = " + std::to_string(trace_dev), trace_dev);
  const HermEig<4> eig = hermitian_eig<4>(m);
  if (eig.values[3] < -tol::kClip)
    throw Error(ErrorKind::NotPSD, "minimum eigenvalue " + std::to_string(eig.values[3]),
                eig.values[3]);
  return DensityMatrix(m);
}

/// Measured spectrum; eigenvalues at or below tol::kNoiseFloor become 0.
inline Spectrum spectrum_of(const DensityMatrix& rho) {
  std::array<double, 4> values = hermitian_eig<4>(rho.mat()).values;
  for (double& x : values)
    if (std::abs(x) <= tol::kNoiseFloor) x = 0.0;
  return Spectrum::from_values(values);
}

inline double purity(const DensityMatrix& rho) {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.mat().squaredNorm();
}

/// Number of eigenvalues above tol::kRank.
inline int numerical_rank(const DensityMatrix& rho) {
  const HermEig<4> eig = hermitian_eig<4>(rho.mat());
  return static_cast<int>(std::count_if(eig.values.begin(), eig.values.end(),
                                        [](double x) { return x > tol::kRank; }));
}

/// Random state of the given rank from the induced Ginibre ensemble,
/// rho = G G^H / tr(G G^H) with G a 4 x rank matrix of standard complex
/// Gaussians drawn column by column from Rng(seed).
inline DensityMatrix sample_random(int rank, std::uint64_t seed) {
  if (rank < 1 || rank > 4)
    throw Error(ErrorKind::InvalidRank, "rank must be in 1..4, got " + std::to_string(rank), rank);
  Rng rng(seed);
  Eigen::Matrix<cplx, 4, Eigen::Dynamic> g(4, rank);
  for (int col = 0; col < rank; ++col)
    for (int row = 0; row < 4; ++row) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(row, col) = cplx(re, im);
    }
  CMat4 rho = g * g.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();
  return validate(rho);
}

/// |Phi+> = (|1> + |4>) / sqrt 2, with basis labels starting at 1.
inline CVec<4> bell_phi_plus() {
  CVec<4> v = CVec<4>::Zero();
  v(0) = v(3) = 1.0 / std::numbers::sqrt2;
  return v;
}

inline DensityMatrix bell_state() {
  const CVec<4> v = bell_phi_plus();
  return validate(v * v.adjoint());
}

inline DensityMatrix maximally_mixed() { return validate(CMat4::Identity() / 4.0); }

/// p |Phi+><Phi+| + (1 - p) I/4.
inline DensityMatrix werner(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw Error(ErrorKind::OutOfRange, "Werner weight must be in [0, 1], got " + std::to_string(p), p);
  const CVec<4> v = bell_phi_plus();
  return validate(p * (v * v.adjoint()) + (1.0 - p) * CMat4::Identity() / 4.0);
}

/// Squared hyperspherical map from three angles in [0, pi/2] to a spectrum.
inline Spectrum spectrum_from_hyperspherical(const std::array<double, 3>& angles) {
  for (double t : angles)
    if (!(t >= 0.0 && t <= std::numbers::pi / 2.0))
      throw Error(ErrorKind::OutOfRange, "hyperspherical angle outside [0, pi/2]", t);
  const double c1 = std::cos(angles[0]), s1 = std::sin(angles[0]);
  const double c2 = std::cos(angles[1]), s2 = std::sin(angles[1]);
  const double c3 = std::cos(angles[2]), s3 = std::sin(angles[2]);
  const double w1 = s1 * s1;
  const double w12 = w1 * s2 * s2;
  return Spectrum::from_values({c1 * c1, w1 * c2 * c2, w12 * c3 * c3, w12 * s3 * s3});
}

/// Scatter families: general states, X states built from the pairs-first
/// and interleaved eigenvector orders, and the MEMS boundary.
enum class SweepFamily { General, XPairsFirst, XInterleaved, MEMS };

constexpr std::string_view to_string(SweepFamily f) noexcept {
  switch (f) {
    case SweepFamily::General: return "General";
    case SweepFamily::XPairsFirst: return "XPairsFirst";
    case SweepFamily::XInterleaved: return "XInterleaved";
    case SweepFamily::MEMS: return "MEMS";
  }
  return "Unknown";
}

/// One point of a concurrence-versus-purity scatter.
struct SweepRecord {
  SweepFamily family = SweepFamily::General;
  int rank = 1;
  double purity = 1.0;
  double concurrence = 0.0;
  std::uint64_t seed = 0;
  // Not serialized: the spectrum-wise MEMS ceiling for this point.
  double mems_ceiling = 0.0;
};

}  // namespace xepu
