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

// Seeded Monte Carlo campaigns: EPU verification, concurrence-purity
// sweeps, and the concurrence landscape over the ansatz angles.

#include <algorithm>
#include <array>
#include <cstdint>
#include <exception>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "xepu/concurrence.hpp"
#include "xepu/spectral_ansatz.hpp"
#include "xepu/states.hpp"
#include "xepu/xfamily.hpp"

namespace xepu {

struct Tolerances {
  double concurrence = 1e-9;      // |C(rho_x) - C(rho)|
  double epu_concurrence = 1e-8;  // |C(U rho U^H) - C(rho)|
  double spectrum = 1e-10;
  double unitary = 1e-10;
  double transform = 1e-8;
  double xtol = tol::kXShape;
};

/// Runs fn(i) for i in [0, count) on up to `threads` workers, each taking a
/// contiguous index range. fn must write only to slot i of its output.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(threads);
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    workers.emplace_back([&, t, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---------------------------------------------------------------------------
// verify

struct VerifySample {
  int rank = 0;
  std::uint64_t seed = 0;
  double concurrence = 0.0;
  double spectrum_residual = 0.0;
  double concurrence_residual_x = 0.0;    // |C(rho_x) - C(rho)|
  double concurrence_residual_epu = 0.0;  // |C(U rho U^H) - C(rho)|
  double unitarity_residual = 0.0;
  double transform_residual = 0.0;
  std::string error;  // non-empty when a numerical error aborted the sample

  bool passed(const Tolerances& t) const {
    return error.empty() && spectrum_residual <= t.spectrum &&
           concurrence_residual_x <= t.concurrence &&
           concurrence_residual_epu <= t.epu_concurrence && unitarity_residual <= t.unitary &&
           transform_residual <= t.transform;
  }
};

/// Runs the full EPU pipeline on one state and measures every residual
/// independently of the construction path.
inline VerifySample verify_state(const DensityMatrix& rho) {
  VerifySample s;
  try {
    const double c = concurrence_general(rho).c;
    s.concurrence = c;
    const EpuResult epu = build_epu(rho);
    const Spectrum in = spectrum_of(rho);
    const Spectrum out = spectrum_of(epu.rho_x);
    for (int k = 0; k < 4; ++k) s.spectrum_residual = std::max(s.spectrum_residual, std::abs(in[k] - out[k]));
    s.concurrence_residual_x = std::abs(concurrence_general(epu.rho_x).c - c);
    const DensityMatrix moved = validate(epu.u * rho.mat() * epu.u.adjoint());
    s.concurrence_residual_epu = std::abs(concurrence_general(moved).c - c);
    s.unitarity_residual = epu.unitarity_residual;
    s.transform_residual = epu.transform_residual;
  } catch (const std::exception& e) {
    s.error = e.what();
  }
  return s;
}

struct RankStats {
  int rank = 0;
  std::size_t count = 0;
  std::size_t failures = 0;
  double max_spectrum = 0.0, mean_spectrum = 0.0;
  double max_concurrence_x = 0.0, mean_concurrence_x = 0.0;
  double max_concurrence_epu = 0.0, mean_concurrence_epu = 0.0;
  double max_unitarity = 0.0, mean_unitarity = 0.0;
  double max_transform = 0.0, mean_transform = 0.0;
};

struct VerificationReport {
  Tolerances tolerances;
  std::vector<RankStats> ranks;
  std::vector<std::string> failures;  // one line of context per failed sample

  bool passed() const { return failures.empty(); }
};

inline RankStats summarize(int rank, const std::vector<VerifySample>& samples, const Tolerances& tol,
                           std::vector<std::string>& failures) {
  RankStats r;
  r.rank = rank;
  r.count = samples.size();
  for (const VerifySample& s : samples) {
    if (!s.passed(tol)) {
      ++r.failures;
      failures.push_back("rank " + std::to_string(s.rank) + " seed " + std::to_string(s.seed) +
                         (s.error.empty() ? ": residual over tolerance" : ": " + s.error));
    }
    r.max_spectrum = std::max(r.max_spectrum, s.spectrum_residual);
    r.max_concurrence_x = std::max(r.max_concurrence_x, s.concurrence_residual_x);
    r.max_concurrence_epu = std::max(r.max_concurrence_epu, s.concurrence_residual_epu);
    r.max_unitarity = std::max(r.max_unitarity, s.unitarity_residual);
    r.max_transform = std::max(r.max_transform, s.transform_residual);
    r.mean_spectrum += s.spectrum_residual;
    r.mean_concurrence_x += s.concurrence_residual_x;
    r.mean_concurrence_epu += s.concurrence_residual_epu;
    r.mean_unitarity += s.unitarity_residual;
    r.mean_transform += s.transform_residual;
  }
  if (r.count > 0) {
    const double n = static_cast<double>(r.count);
    r.mean_spectrum /= n;
    r.mean_concurrence_x /= n;
    r.mean_concurrence_epu /= n;
    r.mean_unitarity /= n;
    r.mean_transform /= n;
  }
  return r;
}

/// Draws `samples` states per rank with seeds base_seed + i and verifies each.
inline VerificationReport run_verify(std::size_t samples, std::uint64_t base_seed,
                                     const std::vector<int>& ranks, const Tolerances& tol,
                                     unsigned threads = 1) {
  VerificationReport report;
  report.tolerances = tol;
  for (int rank : ranks) {
    std::vector<VerifySample> results(samples);
    parallel_for(samples, threads, [&](std::size_t i) {
      const std::uint64_t seed = base_seed + i;
      VerifySample s;
      try {
        s = verify_state(sample_random(rank, seed));
      } catch (const std::exception& e) {
        s.error = e.what();
      }
      s.rank = rank;
      s.seed = seed;
      results[i] = std::move(s);
    });
    report.ranks.push_back(summarize(rank, results, tol, report.failures));
  }
  return report;
}

/// Verifies a single given state (fixtures and files).
inline VerificationReport run_verify_state(const DensityMatrix& rho, const Tolerances& tol) {
  VerificationReport report;
  report.tolerances = tol;
  VerifySample s = verify_state(rho);
  s.rank = numerical_rank(rho);
  report.ranks.push_back(summarize(s.rank, {s}, tol, report.failures));
  return report;
}

// ---------------------------------------------------------------------------
// sweep

/// Seed of the angle stream for the X families at a given sample seed.
inline std::uint64_t angle_seed(std::uint64_t seed) { return mix_seed(seed); }

/// All four family records for one (rank, seed). Every family reuses the
/// spectrum of sample_random(rank, seed), so purities coincide.
inline std::array<SweepRecord, 4> sweep_point(int rank, std::uint64_t seed) {
  const DensityMatrix rho = sample_random(rank, seed);
  const Spectrum spec = spectrum_of(rho);
  const double ceiling = mems_concurrence(spec);

  Rng angles(angle_seed(seed));
  const double alpha = angles.uniform(0.0, std::numbers::pi / 2.0);
  const double beta = angles.uniform(0.0, std::numbers::pi / 2.0);
  const DensityMatrix pairs = assemble_rho_x(spec, {alpha, beta, EigenOrder::PairsFirst});
  const DensityMatrix inter = assemble_rho_x(spec, {alpha, beta, EigenOrder::Interleaved});
  const DensityMatrix mems = build_mems(spec);

  auto rec = [&](SweepFamily f, const DensityMatrix& m, double c) {
    return SweepRecord{f, rank, purity(m), c, seed, ceiling};
  };
  return {rec(SweepFamily::General, rho, concurrence_general(rho).c),
          rec(SweepFamily::XPairsFirst, pairs, concurrence_x(pairs).c),
          rec(SweepFamily::XInterleaved, inter, concurrence_x(inter).c),
          rec(SweepFamily::MEMS, mems, mems_concurrence(spec))};
}

/// Rows sorted by (family, rank, seed) regardless of thread count.
inline std::vector<SweepRecord> run_sweep(std::size_t samples, std::uint64_t base_seed,
                                          const std::vector<int>& ranks, unsigned threads = 1) {
  std::vector<SweepRecord> rows(samples * ranks.size() * 4);
  for (std::size_t r = 0; r < ranks.size(); ++r) {
    parallel_for(samples, threads, [&](std::size_t i) {
      const auto point = sweep_point(ranks[r], base_seed + i);
      for (std::size_t f = 0; f < 4; ++f) rows[((r * samples) + i) * 4 + f] = point[f];
    });
  }
  std::sort(rows.begin(), rows.end(), [](const SweepRecord& a, const SweepRecord& b) {
    return std::tie(a.family, a.rank, a.seed) < std::tie(b.family, b.rank, b.seed);
  });
  return rows;
}

// ---------------------------------------------------------------------------
// surface

struct PredictedPoint {
  double alpha;
  double beta;
  double value;
};

struct SurfaceGrid {
  Spectrum spec;
  double target_c;
  double q;
  std::size_t n;
  std::vector<double> alphas;  // grid axis, n points over [0, pi/2]
  std::vector<double> betas;
  std::vector<double> values;  // row-major, values[i * n + j] = C(alphas[i], betas[j])
  std::optional<PredictedPoint> predicted;  // absent when Q < 0
};

/// Concurrence landscape over (alpha, beta) with the closed-form predicted
/// point (alpha_star, 0) when Q >= 0.
inline SurfaceGrid make_surface(const Spectrum& spec, double target_c, std::size_t n = 201) {
  if (n < 2) throw Error(ErrorKind::OutOfRange, "surface grid needs at least 2 points per axis");
  const double q = q_value(spec, target_c);
  SurfaceGrid g{spec, target_c, q, n, {}, {}, {}, std::nullopt};
  const double step = (std::numbers::pi / 2.0) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    // Last point pinned to pi/2 so rounding never leaves the domain.
    const double t = i + 1 == n ? std::numbers::pi / 2.0 : step * static_cast<double>(i);
    g.alphas.push_back(t);
    g.betas.push_back(t);
  }
  g.values.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g.values[i * n + j] = c_surface(spec, g.alphas[i], g.betas[j]);
  if (q >= 0.0) {
    const double a = alpha_star(spec, target_c);
    g.predicted = PredictedPoint{a, 0.0, c_surface(spec, a, 0.0)};
  }
  return g;
}

}  // namespace xepu
