#pragma once

// Text and JSON renderings of reduction, verification and witness reports.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "netcode/io.hpp"
#include "netcode/nec.hpp"
#include "netcode/reduction.hpp"

namespace netcode {

inline constexpr const char* kToolVersion = "1.0.0";

/// Run provenance embedded in every report.
struct RunInfo {
  std::string command;
  std::uint64_t seed = 0;
  bool seeded = false;  // false when coefficients were pinned from a file
};

inline constexpr const char* kLabelDegree = "Degree of f(X), the product of the determinant polynomials";
inline constexpr const char* kLabelFirstP = "p(X): First p_i(X) for which f(X)(mod p_i(X)) is non-zero";
inline constexpr const char* kLabelRemainder = "f(X)(mod p(X))";
inline constexpr const char* kLabelG = "g(X): Least degree polynomial coprime to f(X)";
inline constexpr const char* kLabelCode = "Resultant network code";
inline constexpr const char* kNotApplicable = "Not applicable";

/// Element as a power of the reduced field's generator, e.g. "b8^3" in GF(8); "0", "1" or hex otherwise.
inline std::string format_power(const FieldElem& x) {
  if (x.is_zero()) return "0";
  if (x.is_one()) return "1";
  const std::string base = "b" + std::to_string(x.field().size());
  if (auto e = x.log()) return *e == 1 ? base : base + "^" + std::to_string(*e);
  return x.to_hex();
}

inline std::string none_found(int cap) { return "None of the form X^(2^i)+X for i <= " + std::to_string(cap); }

/// Source rows as column vectors and every local coefficient that was not 1 before reduction. Source rows are
/// left out when every original entry is 0 or 1, since reduction cannot change them.
struct CodeSummary {
  std::vector<std::pair<EdgeId, std::vector<std::string>>> source_rows;
  std::vector<std::pair<EdgePair, std::string>> coefficients;
};

inline CodeSummary summarize(const NetworkCode& original, const NetworkCode& reduced) {
  CodeSummary out;
  bool rows_trivial = true;
  for (const auto& [e, row] : original.source_rows) {
    for (const FieldElem& x : row) rows_trivial = rows_trivial && (x.is_zero() || x.is_one());
  }
  for (const auto& [e, row] : reduced.source_rows) {
    if (rows_trivial) break;
    std::vector<std::string> col;
    for (const FieldElem& x : row) col.push_back(format_power(x));
    out.source_rows.emplace_back(e, std::move(col));
  }
  for (const auto& [pair, c] : reduced.local_coeffs) {
    auto it = original.local_coeffs.find(pair);
    if (it != original.local_coeffs.end() && it->second.is_one()) continue;
    out.coefficients.emplace_back(pair, format_power(c));
  }
  return out;
}

inline std::string format_summary(const CodeSummary& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, col] : s.source_rows) {
    os << (first ? "" : " ") << "e" << e << "=[";
    for (std::size_t i = 0; i < col.size(); ++i) os << (i ? "," : "") << col[i];
    os << "]";
    first = false;
  }
  for (const auto& [pair, c] : s.coefficients) {
    os << (first ? "" : " ") << "(" << pair.first << "," << pair.second << ")=" << c;
    first = false;
  }
  return os.str();
}

/// The five table rows as (label, value) pairs.
inline std::vector<std::pair<std::string, std::string>> table_rows(const ReductionReport& rep, const NetworkCode& original) {
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back(kLabelDegree, std::to_string(rep.degree()));
  const CoprimeResult& c = rep.coprime;
  rows.emplace_back(kLabelFirstP, c.first_nonzero_p ? c.first_nonzero_p->to_string() : none_found(rep.cap));
  rows.emplace_back(kLabelRemainder, c.reduced_remainder ? c.reduced_remainder->to_string() : kNotApplicable);
  rows.emplace_back(kLabelG, c.g ? c.g->to_string() : kNotApplicable);
  rows.emplace_back(kLabelCode, rep.reduced ? format_summary(summarize(original, *rep.reduced)) : kNotApplicable);
  return rows;
}

inline std::string format_reduction_text(const ReductionReport& rep, const NetworkCode& original, const RunInfo& info) {
  std::ostringstream os;
  os << "netcode " << kToolVersion << " " << info.command << "\n";
  os << "field: " << rep.source_field.to_string() << "\n";
  os << "seed: " << (info.seeded ? std::to_string(info.seed) : std::string("pinned")) << "\n";
  if (rep.nec) os << "alpha: " << rep.alpha << "\n";
  os << "determinant polynomials: " << rep.factors.size() << "\n";
  os << "cap: " << rep.cap << "\n\n";
  const auto rows = table_rows(rep, original);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  for (const auto& [label, value] : rows) os << label << std::string(width - label.size() + 2, ' ') << value << "\n";
  os << "\ntrace:\n";
  for (const CoprimeStep& s : rep.coprime.trace) {
    os << "  i=" << s.i << "  p=" << s.p.to_string() << "  f mod p=" << s.remainder.to_string() << "\n";
  }
  os << "verified: " << (rep.verified ? "yes" : "no") << "\n";
  return os.str();
}

inline Json reduction_to_json(const ReductionReport& rep, const NetworkCode& original, const RunInfo& info) {
  Json j;
  j["tool"] = "netcode";
  j["version"] = kToolVersion;
  j["command"] = info.command;
  j["seed"] = info.seeded ? Json(info.seed) : Json("pinned");
  j["field"] = field_to_json(rep.source_field);
  j["kind"] = rep.nec ? "nec" : "multicast";
  if (rep.nec) j["alpha"] = rep.alpha;
  j["cap"] = rep.cap;
  Json table = Json::object();
  for (const auto& [label, value] : table_rows(rep, original)) table[label] = value;
  j["table"] = table;
  j["degree"] = rep.degree();
  j["f"] = rep.f.to_hex();
  Json factors = Json::array();
  for (const MinorFactor& m : rep.factors) {
    Json fj;
    fj["sink"] = m.sink_index;
    if (rep.nec) fj["F"] = m.F;
    fj["rows"] = m.rows;
    fj["columns"] = m.columns;
    fj["degree"] = m.det.degree();
    fj["det"] = m.det.to_hex();
    factors.push_back(fj);
  }
  j["factors"] = factors;
  Json trace = Json::array();
  for (const CoprimeStep& s : rep.coprime.trace) trace.push_back({{"i", s.i}, {"p", s.p.to_string()}, {"remainder", s.remainder.to_string()}});
  j["trace"] = trace;
  j["g"] = rep.coprime.g ? Json(rep.coprime.g->to_string()) : Json(nullptr);
  j["reduced_code"] = rep.reduced ? code_to_json(*rep.reduced) : Json(nullptr);
  j["verified"] = rep.verified;
  return j;
}

inline Json witnesses_to_json(const Network& net, const NecReport& rep) {
  Json out = Json::array();
  for (const RankWitness& w : rep.witnesses) {
    out.push_back({{"F", w.F}, {"sink", net.name(net.sinks()[w.sink_index])}, {"m", w.m}, {"rank", w.rank}, {"ok", w.ok}});
  }
  return out;
}

inline std::string format_witness(const Network& net, const RankWitness& w) {
  std::ostringstream os;
  os << "F={";
  for (std::size_t i = 0; i < w.F.size(); ++i) os << (i ? "," : "") << w.F[i];
  os << "} sink=" << net.name(net.sinks()[w.sink_index]) << " m=" << w.m << " rank=" << w.rank << (w.ok ? " ok" : " DEFICIENT");
  return os.str();
}

}  // namespace netcode
