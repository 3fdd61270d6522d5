#pragma once

// Field reduction: lift a working code to F_2[X], collect one decodability determinant per constraint, multiply
// them, find the least-degree irreducible g coprime to the product, and reduce every coefficient modulo g.
// Each determinant is nonzero mod g, so every constraint survives in GF(2)[X]/(g).
//
// The determinants come from propagating the lifted coefficients symbolically over F_2[X] with no reduction
// along the way. Reduction mod g commutes with that propagation, so the reduced code's matrices are exactly
// the polynomial matrices taken mod g.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "netcode/binpoly.hpp"
#include "netcode/code.hpp"
#include "netcode/coprime.hpp"
#include "netcode/error.hpp"
#include "netcode/gf2k.hpp"
#include "netcode/nec.hpp"
#include "netcode/network.hpp"
#include "netcode/poly_matrix.hpp"

namespace netcode {

/// One decodability constraint and its determinant polynomial.
struct MinorFactor {
  std::size_t sink_index = 0;
  std::vector<EdgeId> F;           // empty for multicast
  std::vector<std::size_t> rows;   // minor rows in B_T^F (all rows for multicast)
  std::vector<EdgeId> columns;     // edges whose vectors form the minor's columns
  BinPoly det;
};

struct ReductionReport {
  bool nec = false;
  int alpha = 0;
  Field source_field = Field::first_primitive(1);
  int cap = 0;
  std::vector<MinorFactor> factors;
  BinPoly f;
  CoprimeResult coprime;
  std::optional<NetworkCode> reduced;  // absent: the original field stands
  bool verified = false;               // re-verification of the reduced code (true when unchanged)

  int degree() const { return f.degree(); }
  bool applied() const { return reduced.has_value(); }
};

namespace detail {

inline int ceil_log2(std::uint64_t n) {
  int out = 0;
  while ((std::uint64_t{1} << out) < n) ++out;
  return out;
}

inline void search_and_check(ReductionReport& rep) {
  for (const MinorFactor& m : rep.factors) {
    if (m.det.is_zero()) throw ConsistencyError("a decodability determinant vanished over F_2[X] for a verified code");
    rep.f *= m.det;
  }
  if (rep.cap < 1) {
    rep.coprime.searched_cap = 0;
    return;
  }
  rep.coprime = least_degree_coprime(rep.f, rep.cap);
  if (!rep.coprime.found()) return;
  for (const MinorFactor& m : rep.factors) {
    if ((m.det % *rep.coprime.g).is_zero()) {
      throw ConsistencyError("g = " + rep.coprime.g->to_string() + " divides a factor although it is coprime to the product");
    }
  }
}

}  // namespace detail

/// Reduction of a verified multicast code. cap < 0 selects k - 1.
inline ReductionReport reduce_multicast(const Network& net, const NetworkCode& code, int cap = -1) {
  validate(net);
  const MulticastReport check = verify_multicast(net, code);
  if (!check.ok) throw InvalidArgument("input code does not pass multicast verification");

  ReductionReport rep;
  rep.source_field = code.field;
  rep.cap = cap < 0 ? code.field.degree() - 1 : cap;
  rep.f = BinPoly::one();

  const PolyCode lifted = lift(code);
  const EdgeVectors<BinPoly> gv = propagate(net, lifted, poly_scalars());
  std::vector<std::size_t> all_rows(static_cast<std::size_t>(code.h_prime));
  for (std::size_t r = 0; r < all_rows.size(); ++r) all_rows[r] = r;
  for (std::size_t t = 0; t < net.sinks().size(); ++t) {
    MinorFactor m;
    m.sink_index = t;
    m.rows = all_rows;
    m.columns = code.sink_selectors[t];
    m.det = det(transfer_matrix(lifted, gv, t, BinPoly{}));
    rep.factors.push_back(std::move(m));
  }
  detail::search_and_check(rep);
  if (!rep.coprime.found()) {
    rep.verified = true;
    return rep;
  }
  NetworkCode reduced = reduce_code(lifted, Field::from_modulus(*rep.coprime.g));
  rep.verified = verify_multicast(net, reduced).ok;
  if (!rep.verified) throw ConsistencyError("reduced code over " + reduced.field.to_string() + " fails multicast verification");
  rep.reduced = std::move(reduced);
  return rep;
}

/// Default cap for error-correcting reduction: min(k - 1, ceil(log2(N * |F-family|))).
inline int default_nec_cap(const Field& field, std::uint64_t pairs) {
  return std::min(field.degree() - 1, detail::ceil_log2(pairs));
}

/// Reduction of a verified alpha-error-correcting code. cap < 0 selects default_nec_cap.
inline ReductionReport reduce_nec(const Network& net, const NetworkCode& code, int alpha, int cap = -1,
                                  std::uint64_t family_budget = kDefaultFamilyBudget) {
  const NecParams params = make_nec_params(net, alpha, code.h_prime, family_budget);
  const std::vector<Demand> layouts = nec_layouts(net, params);
  const NecReport check = verify_nec(net, code, params, layouts);
  if (!check.ok) throw InvalidArgument("input code does not pass error-correction verification");

  ReductionReport rep;
  rep.nec = true;
  rep.alpha = alpha;
  rep.source_field = code.field;
  rep.cap = cap < 0 ? default_nec_cap(code.field, params.pair_count(net)) : cap;
  rep.f = BinPoly::one();

  const PolyCode lifted = lift(code);
  const auto field_ring = scalars(code.field);
  for (const Demand& d : layouts) {
    const FieldMatrix b = witness_matrix(net, code, d, field_ring);
    const SubmatrixIndex idx = find_full_rank_submatrix(b, static_cast<std::size_t>(params.k_msg + d.tap_paths));
    const PolyMatrix bp = witness_matrix(net, lifted, d, poly_scalars());
    MinorFactor m;
    m.sink_index = d.sink_index;
    m.F = d.injected;
    m.rows = idx.rows;
    const std::vector<EdgeId> terminals = d.terminals();
    for (std::size_t c : idx.cols) m.columns.push_back(terminals[c]);
    m.det = det(bp.submatrix(idx.rows, idx.cols));
    rep.factors.push_back(std::move(m));
  }
  detail::search_and_check(rep);
  if (!rep.coprime.found()) {
    rep.verified = true;
    return rep;
  }
  NetworkCode reduced = reduce_code(lifted, Field::from_modulus(*rep.coprime.g));
  rep.verified = verify_nec(net, reduced, params, layouts).ok;
  if (!rep.verified) throw ConsistencyError("reduced code over " + reduced.field.to_string() + " fails error-correction verification");
  rep.reduced = std::move(reduced);
  return rep;
}

}  // namespace netcode
