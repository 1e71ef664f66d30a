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

// Command-line front end. `run` is separate from main() so tests can drive
// the exact code path the binary uses.
//
// Exit codes: 0 success, 1 a tolerance check failed, 2 usage, input or
// numerical error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "xepu/campaign.hpp"
#include "xepu/concurrence.hpp"
#include "xepu/io.hpp"
#include "xepu/states.hpp"
#include "xepu/xfamily.hpp"

namespace xepu::cli {

enum class Format { Csv, Json };

struct RunConfig {
  std::size_t samples = 10000;
  std::optional<std::uint64_t> seed;
  std::vector<int> ranks{1, 2, 3, 4};
  std::string out;  // empty or "-" means stdout
  std::string format;
  Tolerances tolerances;
  unsigned threads = default_threads();
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitError = 2;

/// --seed, else $XEPU_SEED, else 1.
inline std::uint64_t resolve_seed(const RunConfig& cfg) {
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv("XEPU_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::Parse, std::string("XEPU_SEED is not an unsigned integer: ") + env);
  }
  return 1;
}

inline Format resolve_format(const RunConfig& cfg, Format fallback) {
  if (cfg.format.empty()) return fallback;
  return cfg.format == "json" ? Format::Json : Format::Csv;
}

/// Writes text to cfg.out, or to `out` when no path was given.
inline void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty() || cfg.out == "-") {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + cfg.out);
  file << text;
  if (!file) throw std::runtime_error("write failed for " + cfg.out);
}

/// "bell", "mixed", or "werner:P".
inline DensityMatrix fixture(const std::string& name) {
  if (name == "bell") return bell_state();
  if (name == "mixed") return maximally_mixed();
  if (name.rfind("werner:", 0) == 0) {
    try {
      return werner(std::stod(name.substr(7)));
    } catch (const std::invalid_argument&) {
    }
  }
  throw Error(ErrorKind::Parse, "unknown fixture '" + name + "' (use bell, mixed, werner:P)");
}

/// Ground-truth concurrence for fixtures with a closed form.
inline std::optional<double> fixture_concurrence(const std::string& name) {
  if (name == "bell") return 1.0;
  if (name == "mixed") return 0.0;
  if (name.rfind("werner:", 0) == 0) {
    const double p = std::stod(name.substr(7));
    return std::max(0.0, 1.5 * p - 0.5);
  }
  return std::nullopt;
}

inline std::array<double, 4> parse_four(const std::vector<double>& v, const char* flag) {
  if (v.size() != 4) throw Error(ErrorKind::Parse, std::string(flag) + " needs exactly 4 values");
  return {v[0], v[1], v[2], v[3]};
}

inline std::string verify_summary(const VerificationReport& rep) {
  std::ostringstream os;
  os << "rank  samples  fail  max|dspec|  max|dC_x|  max|dC_U|  max|U'U-I|  max|UrU'-rx|\n";
  for (const RankStats& r : rep.ranks) {
    char line[256];
    std::snprintf(line, sizeof(line), "%4d  %7zu  %4zu  %10.3e  %9.3e  %9.3e  %10.3e  %11.3e\n", r.rank,
                  r.count, r.failures, r.max_spectrum, r.max_concurrence_x, r.max_concurrence_epu,
                  r.max_unitarity, r.max_transform);
    os << line;
  }
  os << (rep.passed() ? "PASS" : "FAIL") << '\n';
  for (const std::string& f : rep.failures) os << "  " << f << '\n';
  return os.str();
}

inline int cmd_verify(const RunConfig& cfg, const std::string& fixture_name, std::ostream& out) {
  VerificationReport rep;
  if (!fixture_name.empty()) {
    const DensityMatrix rho = fixture(fixture_name);
    rep = run_verify_state(rho, cfg.tolerances);
    if (const auto truth = fixture_concurrence(fixture_name)) {
      const double err = std::abs(concurrence_general(rho).c - *truth);
      if (err > cfg.tolerances.concurrence)
        rep.failures.push_back("fixture " + fixture_name + ": |C - C_exact| = " + io::format_double(err));
    }
  } else {
    rep = run_verify(cfg.samples, resolve_seed(cfg), cfg.ranks, cfg.tolerances, cfg.threads);
  }
  // With --out the summary goes to stdout and the report to the file; on
  // stdout alone an explicit --format selects the machine-readable report.
  const bool to_stdout = cfg.out.empty() || cfg.out == "-";
  if (!to_stdout || cfg.format.empty()) out << verify_summary(rep);
  if (!to_stdout || !cfg.format.empty()) {
    std::ostringstream body;
    if (resolve_format(cfg, Format::Json) == Format::Json)
      io::write_json(body, io::report_to_json(rep));
    else
      io::write_report_csv(body, rep);
    emit(cfg, out, body.str());
  }
  return rep.passed() ? kExitOk : kExitCheckFailed;
}

inline int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const auto rows = run_sweep(cfg.samples, resolve_seed(cfg), cfg.ranks, cfg.threads);
  std::ostringstream body;
  if (resolve_format(cfg, Format::Csv) == Format::Json)
    io::write_json(body, io::sweep_to_json(rows));
  else
    io::write_sweep_csv(body, rows);
  emit(cfg, out, body.str());
  return kExitOk;
}

struct SurfaceSource {
  std::string fixture;
  std::vector<double> lambda;
  std::optional<double> concurrence;
};

inline int cmd_surface(const RunConfig& cfg, const SurfaceSource& src, std::size_t grid,
                       std::ostream& out) {
  std::optional<Spectrum> spec;
  double target = 0.0;
  if (!src.fixture.empty()) {
    const DensityMatrix rho = fixture(src.fixture);
    spec = spectrum_of(rho);
    target = concurrence_general(rho).c;
  } else if (!src.lambda.empty()) {
    if (!src.concurrence) throw Error(ErrorKind::Parse, "--lambda needs --concurrence for surface");
    spec = Spectrum::from_values(parse_four(src.lambda, "--lambda"));
    target = *src.concurrence;
  } else {
    const DensityMatrix rho = sample_random(cfg.ranks.empty() ? 4 : cfg.ranks.back(), resolve_seed(cfg));
    spec = spectrum_of(rho);
    target = concurrence_general(rho).c;
  }
  const SurfaceGrid g = make_surface(*spec, target, grid);
  std::ostringstream body;
  if (resolve_format(cfg, Format::Csv) == Format::Json)
    io::write_json(body, io::surface_to_json(g));
  else
    io::write_surface_csv(body, g);
  emit(cfg, out, body.str());
  return kExitOk;
}

struct ConstructInput {
  std::vector<double> lambda;
  std::vector<double> angles;
  std::optional<double> concurrence;
  std::optional<double> eta;
  bool swap = false;
};

inline int cmd_construct(const RunConfig& cfg, const ConstructInput& in, std::ostream& out,
                         std::ostream& err) {
  if (resolve_format(cfg, Format::Json) != Format::Json)
    throw Error(ErrorKind::Parse, "construct writes JSON only");
  const Spectrum spec = !in.lambda.empty()
                            ? Spectrum::from_values(parse_four(in.lambda, "--lambda"))
                            : [&] {
                                if (in.angles.size() != 3)
                                  throw Error(ErrorKind::Parse, "--angles needs exactly 3 values");
                                return spectrum_from_hyperspherical({in.angles[0], in.angles[1], in.angles[2]});
                              }();
  XConstruction xc = [&] {
    if (in.eta) return parameterize(spec, *in.eta);
    try {
      return build_x_state(spec, *in.concurrence);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::UnphysicalConcurrence)
        err << "valid concurrence range for this spectrum: [0, "
            << io::format_double(mems_concurrence(spec)) << "]\n";
      throw;
    }
  }();
  const DensityMatrix rho = in.swap ? swap_variant(xc) : xc.rho_x;
  io::json doc = io::matrix_to_json(rho.mat());
  doc["meta"] = {{"spectrum", io::spectrum_to_json(spec)},
                 {"concurrence", xc.c},
                 {"q", xc.q},
                 {"omega", xc.omega},
                 {"swap", in.swap}};
  if (in.eta) doc["meta"]["eta"] = *in.eta;
  emit(cfg, out, io::to_json_string(doc));
  return kExitOk;
}

inline int cmd_epu(const RunConfig& cfg, const std::string& input, std::ostream& out) {
  if (resolve_format(cfg, Format::Json) != Format::Json)
    throw Error(ErrorKind::Parse, "epu writes JSON only");
  std::string text;
  if (input == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream file(input, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open input file " + input);
    std::ostringstream ss;
    ss << file.rdbuf();
    text = ss.str();
  }
  const DensityMatrix rho = validate(io::parse_matrix(text));
  const EpuResult epu = build_epu(rho);
  const VerifySample s = verify_state(rho);
  const bool ok = s.passed(cfg.tolerances);
  io::json doc{{"meta", {{"tolerances", io::tolerances_to_json(cfg.tolerances)}, {"passed", ok}}},
               {"u", io::matrix_to_json(epu.u)},
               {"rho_x", io::matrix_to_json(epu.rho_x.mat())},
               {"residuals",
                {{"unitarity", epu.unitarity_residual},
                 {"transform", epu.transform_residual},
                 {"spectrum", s.spectrum_residual},
                 {"concurrence_x", s.concurrence_residual_x},
                 {"concurrence_epu", s.concurrence_residual_epu}}},
               {"concurrence", s.concurrence}};
  emit(cfg, out, io::to_json_string(doc));
  return ok ? kExitOk : kExitCheckFailed;
}

inline void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--samples", cfg.samples, "Samples per rank")->check(CLI::PositiveNumber);
  sub->add_option("--seed", cfg.seed, "Base seed (falls back to $XEPU_SEED, then 1)");
  sub->add_option("--ranks", cfg.ranks, "Comma-separated ranks")
      ->delimiter(',')
      ->check(CLI::Range(1, 4));
  sub->add_option("--out", cfg.out, "Output path (default stdout)");
  sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--tol-concurrence", cfg.tolerances.concurrence)->check(CLI::PositiveNumber);
  sub->add_option("--tol-epu-concurrence", cfg.tolerances.epu_concurrence)->check(CLI::PositiveNumber);
  sub->add_option("--tol-spectrum", cfg.tolerances.spectrum)->check(CLI::PositiveNumber);
  sub->add_option("--tol-unitary", cfg.tolerances.unitary)->check(CLI::PositiveNumber);
  sub->add_option("--tol-transform", cfg.tolerances.transform)->check(CLI::PositiveNumber);
  sub->add_option("--xtol", cfg.tolerances.xtol, "Off-X magnitude still counted as zero")->check(CLI::PositiveNumber);
  sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectrum- and concurrence-preserving X states of two qubits", "xepu"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* verify = app.add_subcommand("verify", "EPU verification campaign");
  add_common(verify, cfg);
  std::string fixture_name;
  verify->add_option("--fixture", fixture_name, "bell, mixed or werner:P instead of random states");

  auto* sweep = app.add_subcommand("sweep", "Concurrence-purity scatter data");
  add_common(sweep, cfg);

  auto* surface = app.add_subcommand("surface", "Concurrence landscape over the ansatz angles");
  add_common(surface, cfg);
  SurfaceSource src;
  std::size_t grid = 201;
  surface->add_option("--grid", grid, "Points per axis")->check(CLI::Range(2, 100000));
  surface->add_option("--fixture", src.fixture, "bell, mixed or werner:P as the source state");
  surface->add_option("--lambda", src.lambda, "Four eigenvalues (with --concurrence)")->delimiter(',')->expected(4);
  surface->add_option("--concurrence", src.concurrence, "Target concurrence");

  auto* construct = app.add_subcommand("construct", "Build an X state from spectrum and concurrence");
  add_common(construct, cfg);
  ConstructInput build_in;
  auto* lam = construct->add_option("--lambda", build_in.lambda, "Four eigenvalues")->delimiter(',')->expected(4);
  auto* ang = construct->add_option("--angles", build_in.angles, "Three hyperspherical angles")
                  ->delimiter(',')
                  ->expected(3);
  lam->excludes(ang);
  auto* con = construct->add_option("--concurrence", build_in.concurrence, "Target concurrence");
  auto* eta = construct->add_option("--eta", build_in.eta, "Fraction of the MEMS concurrence")->check(CLI::Range(0.0, 1.0));
  con->excludes(eta);
  construct->add_flag("--swap", build_in.swap, "Apply the local swap (sigma_x on the first qubit)");

  auto* epu = app.add_subcommand("epu", "Compute the EPU for a density matrix file");
  add_common(epu, cfg);
  std::string input;
  epu->add_option("input", input, "JSON density matrix, or - for stdin")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitError;
  }

  try {
    if (*verify) return cmd_verify(cfg, fixture_name, out);
    if (*sweep) return cmd_sweep(cfg, out);
    if (*surface) return cmd_surface(cfg, src, grid, out);
    if (*construct) {
      if (build_in.lambda.empty() && build_in.angles.empty())
        throw Error(ErrorKind::Parse, "construct needs --lambda or --angles");
      if (!build_in.concurrence && !build_in.eta) throw Error(ErrorKind::Parse, "construct needs --concurrence or --eta");
      return cmd_construct(cfg, build_in, out, err);
    }
    if (*epu) return cmd_epu(cfg, input, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace xepu::cli
