#pragma once

// Linear network codes: local coefficients, global encoding vectors, transfer matrices.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "netcode/error.hpp"
#include "netcode/gf2k.hpp"
#include "netcode/matrix.hpp"
#include "netcode/network.hpp"

namespace netcode {

using EdgePair = std::pair<EdgeId, EdgeId>;  // (incoming edge, outgoing edge) at a common node

/// Code description over an arbitrary coefficient ring S (field elements, or their lifts in F_2[X]).
template <typename S>
struct BasicCode {
  int h_prime = 0;
  std::map<EdgeId, std::vector<S>> source_rows;  // source edge -> h'-vector; missing rows are zero
  std::map<EdgePair, S> local_coeffs;            // missing pairs default to 1 at single-input nodes
  std::vector<std::vector<EdgeId>> sink_selectors;  // parallel to Network::sinks()
};

/// A code over GF(2^k).
struct NetworkCode : BasicCode<FieldElem> {
  explicit NetworkCode(Field f) : field(f) {}
  Field field;
};

using PolyCode = BasicCode<BinPoly>;

template <typename S>
struct Scalars {
  S zero;
  S one;
};

inline Scalars<FieldElem> scalars(const Field& f) { return {FieldElem::zero(f), FieldElem::one(f)}; }
inline Scalars<BinPoly> poly_scalars() { return {BinPoly{}, BinPoly::one()}; }

/// Per-edge vectors, indexed by edge id.
template <typename S>
using EdgeVectors = std::vector<std::vector<S>>;

using GlobalVectors = EdgeVectors<FieldElem>;

/// Rejects coefficient keys that do not meet at a node and selectors that are not sink in-edges.
template <typename S>
void check_code_shape(const Network& net, const BasicCode<S>& code) {
  if (code.h_prime < 0) throw InvalidArgument("negative code dimension");
  const NodeId s = net.source();
  for (const auto& [e, row] : code.source_rows) {
    net.check_edge(e);
    if (net.edge(e).tail != s) throw InvalidArgument("source row given for edge " + std::to_string(e) + " which does not leave the source");
    if (row.size() != static_cast<std::size_t>(code.h_prime)) {
      throw InvalidArgument("source row of edge " + std::to_string(e) + " has length " + std::to_string(row.size()) +
                            ", expected " + std::to_string(code.h_prime));
    }
  }
  for (const auto& [pair, c] : code.local_coeffs) {
    net.check_edge(pair.first);
    net.check_edge(pair.second);
    if (net.edge(pair.first).head != net.edge(pair.second).tail) {
      throw InvalidArgument("local coefficient (" + std::to_string(pair.first) + ", " + std::to_string(pair.second) +
                            ") joins edges that do not meet at a node");
    }
  }
  if (!code.sink_selectors.empty() && code.sink_selectors.size() != net.sinks().size()) {
    throw InvalidArgument("sink selector list does not match the sink count");
  }
  for (std::size_t t = 0; t < code.sink_selectors.size(); ++t) {
    const auto& sel = code.sink_selectors[t];
    if (sel.size() != static_cast<std::size_t>(code.h_prime)) {
      throw InvalidArgument("sink '" + net.name(net.sinks()[t]) + "' selects " + std::to_string(sel.size()) + " edges, expected " +
                            std::to_string(code.h_prime));
    }
    for (EdgeId e : sel) {
      net.check_edge(e);
      if (net.edge(e).head != net.sinks()[t]) {
        throw InvalidArgument("selector edge " + std::to_string(e) + " does not enter sink '" + net.name(net.sinks()[t]) + "'");
      }
    }
  }
}

template <typename S>
const S& local_coeff(const Network& net, const BasicCode<S>& code, EdgeId in, EdgeId out, const S& one) {
  auto it = code.local_coeffs.find({in, out});
  if (it != code.local_coeffs.end()) return it->second;
  if (net.in_edges(net.edge(out).tail).size() == 1) return one;
  throw InvalidArgument("missing local coefficient for edge pair (" + std::to_string(in) + ", " + std::to_string(out) + ")");
}

/// Global vectors extended by one coordinate per injected edge: coordinate h'+j carries an additive symbol
/// entering on edge injected[j] (after the edge's own combination), so the result has length
/// h' + injected.size().
template <typename S>
EdgeVectors<S> propagate_extended(const Network& net, const BasicCode<S>& code, const std::vector<EdgeId>& injected,
                                  const Scalars<S>& ring) {
  const auto k = static_cast<std::size_t>(code.h_prime);
  const std::size_t width = k + injected.size();
  std::vector<int> inject_slot(net.edge_count(), -1);
  for (std::size_t j = 0; j < injected.size(); ++j) {
    net.check_edge(injected[j]);
    inject_slot[static_cast<std::size_t>(injected[j])] = static_cast<int>(j);
  }
  EdgeVectors<S> gv(net.edge_count(), std::vector<S>(width, ring.zero));
  const NodeId s = net.source();
  for (EdgeId e : net.edge_order()) {
    auto& v = gv[static_cast<std::size_t>(e)];
    const NodeId tail = net.edge(e).tail;
    if (tail == s) {
      auto it = code.source_rows.find(e);
      if (it != code.source_rows.end()) {
        for (std::size_t i = 0; i < k; ++i) v[i] = it->second[i];
      }
    } else {
      for (EdgeId in : net.in_edges(tail)) {
        const S& c = local_coeff(net, code, in, e, ring.one);
        if (c == ring.zero) continue;
        const auto& src = gv[static_cast<std::size_t>(in)];
        for (std::size_t i = 0; i < width; ++i) {
          if (!(src[i] == ring.zero)) v[i] = v[i] + c * src[i];
        }
      }
    }
    if (const int j = inject_slot[static_cast<std::size_t>(e)]; j >= 0) v[k + static_cast<std::size_t>(j)] = v[k + static_cast<std::size_t>(j)] + ring.one;
  }
  return gv;
}

template <typename S>
EdgeVectors<S> propagate(const Network& net, const BasicCode<S>& code, const Scalars<S>& ring) {
  return propagate_extended(net, code, {}, ring);
}

inline GlobalVectors propagate(const Network& net, const NetworkCode& code) {
  check_code_shape(net, code);
  return propagate(net, code, scalars(code.field));
}

/// Columns are the vectors of the selected edges, in the given order.
template <typename S>
Matrix<S> columns_of(const EdgeVectors<S>& gv, const std::vector<EdgeId>& edges, std::size_t height, const S& zero) {
  Matrix<S> m(height, edges.size(), zero);
  for (std::size_t c = 0; c < edges.size(); ++c) {
    const auto& v = gv[static_cast<std::size_t>(edges[c])];
    for (std::size_t r = 0; r < height; ++r) m(r, c) = v[r];
  }
  return m;
}

/// h' x h' matrix whose columns are the global vectors of the sink's selected edges.
template <typename S>
Matrix<S> transfer_matrix(const BasicCode<S>& code, const EdgeVectors<S>& gv, std::size_t sink_index, const S& zero) {
  if (sink_index >= code.sink_selectors.size()) throw InvalidArgument("sink index out of range");
  return columns_of(gv, code.sink_selectors[sink_index], static_cast<std::size_t>(code.h_prime), zero);
}

inline FieldMatrix transfer_matrix(const NetworkCode& code, const GlobalVectors& gv, std::size_t sink_index) {
  return transfer_matrix(code, gv, sink_index, FieldElem::zero(code.field));
}

struct MulticastReport {
  std::vector<std::size_t> ranks;  // parallel to sinks
  bool ok = false;
};

inline MulticastReport verify_multicast(const Network& net, const NetworkCode& code) {
  MulticastReport out;
  out.ok = true;
  if (code.sink_selectors.size() != net.sinks().size()) {
    throw InvalidArgument("code has " + std::to_string(code.sink_selectors.size()) + " sink selectors for " +
                          std::to_string(net.sinks().size()) + " sinks");
  }
  const GlobalVectors gv = propagate(net, code);
  for (std::size_t t = 0; t < net.sinks().size(); ++t) {
    const std::size_t r = code.h_prime == 0 ? 0 : rank(transfer_matrix(code, gv, t));
    out.ranks.push_back(r);
    if (r != static_cast<std::size_t>(code.h_prime)) out.ok = false;
  }
  return out;
}

/// Entrywise residue lift of every coefficient into F_2[X].
inline PolyCode lift(const NetworkCode& code) {
  PolyCode out;
  out.h_prime = code.h_prime;
  out.sink_selectors = code.sink_selectors;
  for (const auto& [e, row] : code.source_rows) {
    std::vector<BinPoly> lifted;
    for (const FieldElem& x : row) lifted.push_back(x.to_binpoly());
    out.source_rows.emplace(e, std::move(lifted));
  }
  for (const auto& [pair, c] : code.local_coeffs) out.local_coeffs.emplace(pair, c.to_binpoly());
  return out;
}

/// Every coefficient of a lifted code taken modulo the target field's modulus.
inline NetworkCode reduce_code(const PolyCode& code, const Field& target) {
  NetworkCode out(target);
  out.h_prime = code.h_prime;
  out.sink_selectors = code.sink_selectors;
  for (const auto& [e, row] : code.source_rows) {
    std::vector<FieldElem> reduced;
    for (const BinPoly& p : row) reduced.push_back(reduce_into_field(p, target));
    out.source_rows.emplace(e, std::move(reduced));
  }
  for (const auto& [pair, p] : code.local_coeffs) out.local_coeffs.emplace(pair, reduce_into_field(p, target));
  return out;
}

}  // namespace netcode
