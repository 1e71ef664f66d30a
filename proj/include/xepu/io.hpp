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

// File formats.
//
// Matrices are JSON objects {"re": [[...]], "im": [[...]]}, each a 4x4
// row-major array. Every floating-point number this module writes, in JSON
// or CSV, carries 17 significant digits.

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "xepu/campaign.hpp"
#include "xepu/error.hpp"
#include "xepu/linalg.hpp"
#include "xepu/states.hpp"

namespace xepu::io {

using json = nlohmann::ordered_json;

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

namespace detail {

inline void emit(std::ostream& os, const json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad << json(it.key()).dump() << (indent > 0 ? ": " : ":");
        emit(os, it.value(), indent, depth + 1);
      }
      os << nl << close_pad << '}';
      return;
    }
    case json::value_t::array: {
      // Arrays of scalars stay on one line; that keeps matrices readable.
      const bool flat = std::none_of(j.begin(), j.end(),
                                     [](const json& e) { return e.is_structured(); });
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[';
      if (!flat) os << nl;
      bool first = true;
      for (const json& e : j) {
        if (!first) os << (flat ? ", " : ",") << (flat ? "" : nl);
        first = false;
        if (!flat) os << pad;
        emit(os, e, indent, depth + 1);
      }
      if (!flat) os << nl << close_pad;
      os << ']';
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      // JSON has no non-finite literals.
      if (!std::isfinite(x))
        os << "null";
      else
        os << format_double(x);
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace detail

/// Serializes with 17-significant-digit floats.
inline void write_json(std::ostream& os, const json& j, int indent = 2) {
  detail::emit(os, j, indent, 0);
  os << '\n';
}

inline std::string to_json_string(const json& j, int indent = 2) {
  std::ostringstream os;
  write_json(os, j, indent);
  return os.str();
}

inline json matrix_to_json(const CMat4& m) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < 4; ++i) {
    json rr = json::array(), ir = json::array();
    for (int k = 0; k < 4; ++k) {
      rr.push_back(m(i, k).real());
      ir.push_back(m(i, k).imag());
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  return json{{"re", re}, {"im", im}};
}

inline CMat4 matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw Error(ErrorKind::Parse, "matrix object needs \"re\" and \"im\" members");
  auto part = [](const json& rows, const char* name) {
    if (!rows.is_array() || rows.size() != 4)
      throw Error(ErrorKind::Parse, std::string("\"") + name + "\" must be a 4x4 array");
    Eigen::Matrix4d out;
    for (int i = 0; i < 4; ++i) {
      const json& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || row.size() != 4)
        throw Error(ErrorKind::Parse, std::string("\"") + name + "\" row " + std::to_string(i) +
                                          " must have 4 entries");
      for (int k = 0; k < 4; ++k) {
        const json& v = row[static_cast<std::size_t>(k)];
        if (!v.is_number())
          throw Error(ErrorKind::Parse, std::string("\"") + name + "\" entries must be numbers");
        out(i, k) = v.get<double>();
      }
    }
    return out;
  };
  const Eigen::Matrix4d re = part(j.at("re"), "re");
  const Eigen::Matrix4d im = part(j.at("im"), "im");
  CMat4 m;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) m(i, k) = cplx(re(i, k), im(i, k));
  return m;
}

inline CMat4 parse_matrix(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  return matrix_from_json(j);
}

inline json spectrum_to_json(const Spectrum& s) {
  return json::array({s[0], s[1], s[2], s[3]});
}

inline json tolerances_to_json(const Tolerances& t) {
  return json{{"concurrence", t.concurrence}, {"epu_concurrence", t.epu_concurrence},
              {"spectrum", t.spectrum},       {"unitary", t.unitary},
              {"transform", t.transform},     {"xtol", t.xtol}};
}

inline constexpr const char* kSweepHeader = "family,rank,purity,concurrence,seed";

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& rows) {
  os << kSweepHeader << '\n';
  for (const SweepRecord& r : rows)
    os << to_string(r.family) << ',' << r.rank << ',' << format_double(r.purity) << ','
       << format_double(r.concurrence) << ',' << r.seed << '\n';
}

inline json sweep_to_json(const std::vector<SweepRecord>& rows) {
  json arr = json::array();
  for (const SweepRecord& r : rows)
    arr.push_back(json{{"family", std::string(to_string(r.family))},
                       {"rank", r.rank},
                       {"purity", r.purity},
                       {"concurrence", r.concurrence},
                       {"seed", r.seed}});
  return arr;
}

inline json rank_stats_to_json(const RankStats& r) {
  return json{{"rank", r.rank},
              {"count", r.count},
              {"failures", r.failures},
              {"max", {{"spectrum", r.max_spectrum},
                       {"concurrence_x", r.max_concurrence_x},
                       {"concurrence_epu", r.max_concurrence_epu},
                       {"unitarity", r.max_unitarity},
                       {"transform", r.max_transform}}},
              {"mean", {{"spectrum", r.mean_spectrum},
                        {"concurrence_x", r.mean_concurrence_x},
                        {"concurrence_epu", r.mean_concurrence_epu},
                        {"unitarity", r.mean_unitarity},
                        {"transform", r.mean_transform}}}};
}

inline json report_to_json(const VerificationReport& rep) {
  json ranks = json::array();
  for (const RankStats& r : rep.ranks) ranks.push_back(rank_stats_to_json(r));
  return json{{"meta", {{"tolerances", tolerances_to_json(rep.tolerances)}}},
              {"passed", rep.passed()},
              {"ranks", ranks},
              {"failures", rep.failures}};
}

inline void write_report_csv(std::ostream& os, const VerificationReport& rep) {
  os << "rank,count,failures,max_spectrum,mean_spectrum,max_concurrence_x,mean_concurrence_x,"
        "max_concurrence_epu,mean_concurrence_epu,max_unitarity,mean_unitarity,max_transform,"
        "mean_transform\n";
  for (const RankStats& r : rep.ranks)
    os << r.rank << ',' << r.count << ',' << r.failures << ',' << format_double(r.max_spectrum) << ','
       << format_double(r.mean_spectrum) << ',' << format_double(r.max_concurrence_x) << ','
       << format_double(r.mean_concurrence_x) << ',' << format_double(r.max_concurrence_epu) << ','
       << format_double(r.mean_concurrence_epu) << ',' << format_double(r.max_unitarity) << ','
       << format_double(r.mean_unitarity) << ',' << format_double(r.max_transform) << ','
       << format_double(r.mean_transform) << '\n';
}

inline json surface_meta(const SurfaceGrid& g) {
  json meta{{"spectrum", spectrum_to_json(g.spec)},
            {"target_c", g.target_c},
            {"q", g.q},
            {"grid", g.n},
            {"q_negative", g.q < 0.0}};
  if (g.predicted)
    meta["predicted"] = {{"alpha", g.predicted->alpha},
                         {"beta", g.predicted->beta},
                         {"c", g.predicted->value}};
  return meta;
}

inline json surface_to_json(const SurfaceGrid& g) {
  json rows = json::array();
  for (std::size_t i = 0; i < g.n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < g.n; ++j) row.push_back(g.values[i * g.n + j]);
    rows.push_back(row);
  }
  return json{{"meta", surface_meta(g)}, {"alpha", g.alphas}, {"beta", g.betas}, {"c", rows}};
}

/// Metadata as leading "# key=value" lines, then alpha,beta,c rows.
inline void write_surface_csv(std::ostream& os, const SurfaceGrid& g) {
  os << "# spectrum=" << format_double(g.spec[0]) << ';' << format_double(g.spec[1]) << ';'
     << format_double(g.spec[2]) << ';' << format_double(g.spec[3]) << '\n';
  os << "# target_c=" << format_double(g.target_c) << '\n';
  os << "# q=" << format_double(g.q) << '\n';
  if (g.predicted) {
    os << "# predicted_alpha=" << format_double(g.predicted->alpha) << '\n';
    os << "# predicted_beta=" << format_double(g.predicted->beta) << '\n';
    os << "# predicted_c=" << format_double(g.predicted->value) << '\n';
  } else {
    os << "# q_negative=true\n";
  }
  os << "alpha,beta,c\n";
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < g.n; ++j)
      os << format_double(g.alphas[i]) << ',' << format_double(g.betas[j]) << ','
         << format_double(g.values[i * g.n + j]) << '\n';
}

}  // namespace xepu::io
