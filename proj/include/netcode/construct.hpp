#pragma once

// Flow-path greedy code construction.
//
// Each demand is a set of edge-disjoint paths into one sink, starting either at one of the k message
// coordinates or at an injected error coordinate. Edges are visited in topological order; every path keeps
// the vector of its most recent edge (its frontier). Coefficients for the edge being visited are drawn from a
// seeded candidate order until every demand routed through that edge keeps a frontier of full column rank.
// The determinant of each affected frontier is a nonzero polynomial of degree <= 1 in the candidate
// coefficients, so a field with more elements than demands always admits a choice.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "netcode/code.hpp"
#include "netcode/error.hpp"
#include "netcode/matrix.hpp"
#include "netcode/network.hpp"

namespace netcode {

/// Paths feeding one sink, written over original edge ids.
struct Demand {
  struct Path {
    std::size_t start_coord = 0;  // < k: message symbol; >= k: error symbol of injected[start_coord - k]
    std::vector<EdgeId> edges;
  };

  std::size_t sink_index = 0;
  std::vector<EdgeId> injected;  // the error-location set F (sorted); empty for plain multicast
  std::vector<Path> paths;
  int message_paths = 0;
  int tap_paths = 0;  // m_T^F

  /// Last edge of every path, ascending.
  std::vector<EdgeId> terminals() const {
    std::vector<EdgeId> out;
    for (const Path& p : paths) out.push_back(p.edges.back());
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline std::string describe(const Network& net, const Demand& d) {
  std::ostringstream os;
  os << "(F={";
  for (std::size_t i = 0; i < d.injected.size(); ++i) os << (i ? "," : "") << d.injected[i];
  os << "}, T=" << net.name(net.sinks()[d.sink_index]) << ")";
  return os.str();
}

/// Routes k message paths (and, when `tapped` is nonempty, as many error paths as possible first) from an
/// imaginary source into sink `sink_index`.
inline Demand route_demand(const Network& net, std::size_t sink_index, const std::vector<EdgeId>& tapped, int k) {
  const TappedNetwork tn = insert_error_tap(net, tapped, k);
  const NodeId sprime = tn.imaginary_source;
  const NodeId t = net.sinks()[sink_index];
  UnitFlow flow(tn.net);
  for (EdgeId e : tn.feed_edges) flow.block(e);
  Demand d;
  d.sink_index = sink_index;
  d.injected = tapped;
  d.tap_paths = flow.augment_all(sprime, t);
  for (EdgeId e : tn.feed_edges) flow.unblock(e);
  d.message_paths = flow.augment_all(sprime, t, k);
  if (d.message_paths < k) {
    d.paths.clear();
    throw Infeasible("cannot route " + std::to_string(k) + " message paths disjoint from " + std::to_string(d.tap_paths) +
                     " error paths for " + describe(net, d));
  }
  std::vector<EdgeId> original(tn.net.edge_count(), -1);
  for (std::size_t e = 0; e < net.edge_count(); ++e) original[e] = static_cast<EdgeId>(e);
  for (const auto& [e, halves] : tn.split) original[static_cast<std::size_t>(halves.second)] = e;
  for (const auto& aug_path : flow.paths(sprime, t)) {
    Demand::Path p;
    const EdgeId first = aug_path.front();
    auto tap = std::find(tn.tap_edges.begin(), tn.tap_edges.end(), first);
    if (tap != tn.tap_edges.end()) {
      p.start_coord = static_cast<std::size_t>(k) + static_cast<std::size_t>(tap - tn.tap_edges.begin());
    } else {
      auto feed = std::find(tn.feed_edges.begin(), tn.feed_edges.end(), first);
      p.start_coord = static_cast<std::size_t>(feed - tn.feed_edges.begin());
    }
    for (std::size_t i = 1; i < aug_path.size(); ++i) {
      const EdgeId e = original[static_cast<std::size_t>(aug_path[i])];
      if (p.edges.empty() || p.edges.back() != e) p.edges.push_back(e);
    }
    d.paths.push_back(std::move(p));
  }
  std::sort(d.paths.begin(), d.paths.end(), [](const Demand::Path& a, const Demand::Path& b) { return a.start_coord < b.start_coord; });
  return d;
}

struct ConstructOptions {
  std::uint64_t seed = 1;
  /// Skip the up-front field-size check; construction may then dead-end.
  bool best_effort = false;
  /// Enumerate every coefficient tuple when q^d is at most this, otherwise draw at random.
  std::uint64_t exhaustive_limit = 1U << 16;
  std::size_t random_attempts = 4096;
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seeded order of coefficient tuples for one edge.
class CandidateStream {
 public:
  CandidateStream(const Field& f, std::size_t vars, std::uint64_t seed, const ConstructOptions& opts)
      : field_(f), vars_(vars), rng_(seed), attempts_(opts.random_attempts) {
    std::uint64_t total = 1;
    exhaustive_ = true;
    for (std::size_t i = 0; i < vars && exhaustive_; ++i) {
      if (total > opts.exhaustive_limit / f.size()) exhaustive_ = false;
      total *= f.size();
    }
    if (exhaustive_) {
      order_.resize(total);
      std::iota(order_.begin(), order_.end(), std::uint64_t{0});
      std::shuffle(order_.begin(), order_.end(), rng_);
    }
  }

  bool next(std::vector<FieldElem>& out) {
    out.clear();
    if (exhaustive_) {
      if (pos_ == order_.size()) return false;
      std::uint64_t code = order_[pos_++];
      for (std::size_t i = 0; i < vars_; ++i) {
        out.emplace_back(field_, code % field_.size());
        code /= field_.size();
      }
      return true;
    }
    if (pos_++ == attempts_) return false;
    std::uniform_int_distribution<std::uint64_t> dist(0, field_.size() - 1);
    for (std::size_t i = 0; i < vars_; ++i) out.emplace_back(field_, dist(rng_));
    return true;
  }

 private:
  Field field_;
  std::size_t vars_;
  std::mt19937_64 rng_;
  std::size_t attempts_;
  bool exhaustive_ = true;
  std::vector<std::uint64_t> order_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Greedy assignment of every source row and local coefficient so that all demands end with full-rank
/// frontiers. Throws Infeasible naming the first demand no candidate can satisfy.
inline NetworkCode greedy_construct(const Network& net, int k, const Field& field, const std::vector<Demand>& demands,
                                    const ConstructOptions& opts) {
  const auto ku = static_cast<std::size_t>(k);
  const FieldElem zero = FieldElem::zero(field);
  const FieldElem one = FieldElem::one(field);
  NetworkCode code(field);
  code.h_prime = k;

  struct State {
    std::size_t width = 0;
    std::vector<int> inject_slot;                    // per edge
    std::vector<std::vector<FieldElem>> vec;         // per edge
    std::vector<std::vector<FieldElem>> frontier;    // per path
  };
  std::vector<State> state(demands.size());
  // edge -> (demand, path) pairs routed through it
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> through(net.edge_count());
  for (std::size_t di = 0; di < demands.size(); ++di) {
    const Demand& d = demands[di];
    State& st = state[di];
    st.width = ku + d.injected.size();
    st.inject_slot.assign(net.edge_count(), -1);
    for (std::size_t j = 0; j < d.injected.size(); ++j) st.inject_slot[static_cast<std::size_t>(d.injected[j])] = static_cast<int>(j);
    st.vec.assign(net.edge_count(), std::vector<FieldElem>(st.width, zero));
    for (std::size_t p = 0; p < d.paths.size(); ++p) {
      std::vector<FieldElem> unit(st.width, zero);
      unit[d.paths[p].start_coord] = one;
      st.frontier.push_back(std::move(unit));
      for (EdgeId e : d.paths[p].edges) through[static_cast<std::size_t>(e)].emplace_back(di, p);
    }
  }

  const NodeId s = net.source();
  std::vector<FieldElem> cand;
  for (EdgeId e : net.edge_order()) {
    const auto ue = static_cast<std::size_t>(e);
    const NodeId tail = net.edge(e).tail;
    const bool from_source = tail == s;
    const std::vector<EdgeId>& inputs = net.in_edges(tail);
    const std::size_t vars = from_source ? ku : inputs.size();

    // Vector carried by e in demand di under coefficients c.
    auto edge_vector = [&](std::size_t di, const std::vector<FieldElem>& c) {
      const State& st = state[di];
      std::vector<FieldElem> v(st.width, zero);
      if (from_source) {
        for (std::size_t i = 0; i < ku; ++i) v[i] = c[i];
      } else {
        for (std::size_t i = 0; i < inputs.size(); ++i) {
          if (c[i].is_zero()) continue;
          const auto& src = st.vec[static_cast<std::size_t>(inputs[i])];
          for (std::size_t r = 0; r < st.width; ++r) v[r] += c[i] * src[r];
        }
      }
      if (const int j = st.inject_slot[ue]; j >= 0) v[ku + static_cast<std::size_t>(j)] += one;
      return v;
    };
    auto frontier_ok = [&](std::size_t di, std::size_t path, const std::vector<FieldElem>& v) {
      std::vector<std::vector<FieldElem>> cols = state[di].frontier;
      cols[path] = v;
      return rank(FieldMatrix::from_columns(cols, zero)) == cols.size();
    };

    detail::CandidateStream stream(field, vars, detail::mix_seed(opts.seed, ue), opts);
    bool accepted = false;
    std::size_t worst = 0;
    while (stream.next(cand)) {
      bool ok = true;
      for (auto [di, path] : through[ue]) {
        if (!frontier_ok(di, path, edge_vector(di, cand))) {
          ok = false;
          worst = di;
          break;
        }
      }
      if (ok) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw Infeasible("no coefficient choice for edge " + std::to_string(e) + " keeps " + describe(net, demands[worst]) +
                       " decodable over " + field.to_string());
    }
    if (from_source) {
      if (vars > 0) code.source_rows[e] = cand;
    } else {
      for (std::size_t i = 0; i < inputs.size(); ++i) code.local_coeffs.insert_or_assign(EdgePair{inputs[i], e}, cand[i]);
    }
    for (std::size_t di = 0; di < demands.size(); ++di) state[di].vec[ue] = edge_vector(di, cand);
    for (auto [di, path] : through[ue]) state[di].frontier[path] = state[di].vec[ue];
  }
  return code;
}

/// Multicast code in which every sink's transfer matrix is invertible. Requires 2^k > N unless best_effort.
inline NetworkCode construct_multicast(const Network& net, int h_prime, const Field& field, const ConstructOptions& opts = {}) {
  const FlowProfile profile = validate(net);
  if (h_prime < 0) throw InvalidArgument("negative dimension");
  if (h_prime > profile.h) {
    throw Infeasible("requested dimension " + std::to_string(h_prime) + " exceeds the multicast capacity h = " + std::to_string(profile.h));
  }
  const std::uint64_t n_sinks = net.sinks().size();
  if (!opts.best_effort && field.size() <= n_sinks) {
    throw Infeasible("field " + field.to_string() + " is too small: deterministic construction needs 2^k > N = " +
                     std::to_string(n_sinks));
  }
  std::vector<Demand> demands;
  for (std::size_t t = 0; t < net.sinks().size(); ++t) demands.push_back(route_demand(net, t, {}, h_prime));
  NetworkCode code = greedy_construct(net, h_prime, field, demands, opts);
  for (const Demand& d : demands) code.sink_selectors.push_back(d.terminals());
  return code;
}

}  // namespace netcode
