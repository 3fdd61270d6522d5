#pragma once

// Network-error-correcting codes meeting the network Singleton bound (message dimension k = h - 2*alpha).
//
// For every set F of 2*alpha edges and every sink T, error symbols are injected additively on F's edges.
// Paths from the error taps are routed first (m_T^F of them), then k message paths disjoint from them.
// The witness B_T^F has one column per path-terminating edge at T, each the (k + 2*alpha)-long vector of
// message and error coefficients carried there; the code corrects alpha errors when every B_T^F has full
// column rank k + m_T^F.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "netcode/code.hpp"
#include "netcode/construct.hpp"
#include "netcode/error.hpp"
#include "netcode/matrix.hpp"
#include "netcode/network.hpp"

namespace netcode {

inline constexpr std::uint64_t kDefaultFamilyBudget = 1'000'000;

/// C(n, r), saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    const std::uint64_t num = n - r + i;
    if (out > UINT64_MAX / num) return UINT64_MAX;
    out = out * num / i;
  }
  return out;
}

/// All r-subsets of edge ids 0..n-1 in lexicographic order.
inline std::vector<std::vector<EdgeId>> edge_subsets(std::size_t n, std::size_t r, std::uint64_t budget = kDefaultFamilyBudget) {
  const std::uint64_t count = binomial(n, r);
  if (count > budget) {
    throw BudgetExceeded("error-location family has C(" + std::to_string(n) + ", " + std::to_string(r) + ") = " +
                         std::to_string(count) + " sets, over the budget of " + std::to_string(budget));
  }
  std::vector<std::vector<EdgeId>> out;
  if (r > n) return out;
  std::vector<EdgeId> cur(r);
  for (std::size_t i = 0; i < r; ++i) cur[i] = static_cast<EdgeId>(i);
  while (true) {
    out.push_back(cur);
    std::size_t pos = r;
    while (pos > 0 && cur[pos - 1] == static_cast<EdgeId>(n - r + pos - 1)) --pos;
    if (pos == 0) break;
    ++cur[pos - 1];
    for (std::size_t i = pos; i < r; ++i) cur[i] = cur[i - 1] + 1;
  }
  return out;
}

struct NecParams {
  int alpha = 0;
  int k_msg = 0;
  std::vector<std::vector<EdgeId>> family;  // all 2*alpha-subsets of edges

  /// Sinks times family size; the deterministic construction wants 2^k above this.
  std::uint64_t pair_count(const Network& net) const { return net.sinks().size() * family.size(); }
};

/// Validates the Singleton bound and enumerates the error-location family. k_msg < 0 selects h - 2*alpha.
inline NecParams make_nec_params(const Network& net, int alpha, int k_msg = -1, std::uint64_t budget = kDefaultFamilyBudget) {
  if (alpha < 0) throw InvalidArgument("alpha must be >= 0");
  const FlowProfile profile = validate(net);
  const int max_k = profile.h - 2 * alpha;
  if (max_k < 1) {
    throw Infeasible("network Singleton bound: h = " + std::to_string(profile.h) + " cannot carry any message while correcting " +
                     std::to_string(alpha) + " errors (need h >= 2*alpha + 1)");
  }
  if (k_msg < 0) k_msg = max_k;
  if (k_msg < 1 || k_msg > max_k) {
    throw Infeasible("message dimension " + std::to_string(k_msg) + " violates the network Singleton bound k <= h - 2*alpha = " +
                     std::to_string(max_k));
  }
  NecParams p;
  p.alpha = alpha;
  p.k_msg = k_msg;
  p.family = edge_subsets(net.edge_count(), static_cast<std::size_t>(2 * alpha), budget);
  return p;
}

/// Routing for every (F, T), F-major then sink order.
inline std::vector<Demand> nec_layouts(const Network& net, const NecParams& params) {
  std::vector<Demand> out;
  out.reserve(params.pair_count(net));
  for (const auto& F : params.family) {
    for (std::size_t t = 0; t < net.sinks().size(); ++t) out.push_back(route_demand(net, t, F, params.k_msg));
  }
  return out;
}

struct RankWitness {
  std::vector<EdgeId> F;
  std::size_t sink_index = 0;
  int m = 0;
  std::vector<EdgeId> columns;  // terminating edges at the sink, ascending
  std::size_t rank = 0;
  bool ok = false;
};

/// B_T^F over any coefficient ring: (k + |F|) x (k + m) with columns in ascending edge order.
template <typename S>
Matrix<S> witness_matrix(const Network& net, const BasicCode<S>& code, const Demand& d, const Scalars<S>& ring) {
  const EdgeVectors<S> gv = propagate_extended(net, code, d.injected, ring);
  return columns_of(gv, d.terminals(), static_cast<std::size_t>(code.h_prime) + d.injected.size(), ring.zero);
}

struct NecReport {
  std::vector<RankWitness> witnesses;
  bool ok = false;

  const RankWitness* first_failure() const {
    for (const auto& w : witnesses) {
      if (!w.ok) return &w;
    }
    return nullptr;
  }
};

inline NecReport verify_nec(const Network& net, const NetworkCode& code, const NecParams& params, const std::vector<Demand>& layouts) {
  check_code_shape(net, code);
  if (code.h_prime != params.k_msg) {
    throw InvalidArgument("code dimension " + std::to_string(code.h_prime) + " differs from message dimension " + std::to_string(params.k_msg));
  }
  NecReport out;
  out.ok = true;
  const auto ring = scalars(code.field);
  for (const Demand& d : layouts) {
    RankWitness w;
    w.F = d.injected;
    w.sink_index = d.sink_index;
    w.m = d.tap_paths;
    w.columns = d.terminals();
    const FieldMatrix b = witness_matrix(net, code, d, ring);
    w.rank = rank(b);
    w.ok = w.rank == static_cast<std::size_t>(params.k_msg + d.tap_paths) && d.tap_paths <= 2 * params.alpha;
    if (!w.ok) out.ok = false;
    out.witnesses.push_back(std::move(w));
  }
  return out;
}

inline NecReport verify_nec(const Network& net, const NetworkCode& code, int alpha) {
  const NecParams params = make_nec_params(net, alpha, code.h_prime);
  return verify_nec(net, code, params, nec_layouts(net, params));
}

struct NecCode {
  NetworkCode code;
  NecParams params;
  NecReport report;
};

enum class NecMode { kGreedy, kRandomized };

struct NecOptions : ConstructOptions {
  NecMode mode = NecMode::kGreedy;
  std::size_t retries = 64;  // randomized mode only
  int k_msg = -1;
  std::uint64_t family_budget = kDefaultFamilyBudget;
};

/// Code with every B_T^F of full rank. The deterministic guarantee needs 2^k > N * |F-family|; smaller fields
/// require best_effort and may fail with a named (F, T).
inline NecCode construct_nec(const Network& net, int alpha, const Field& field, const NecOptions& opts = {}) {
  NecParams params = make_nec_params(net, alpha, opts.k_msg, opts.family_budget);
  const std::uint64_t pairs = params.pair_count(net);
  if (!opts.best_effort && field.size() <= pairs) {
    throw Infeasible("field " + field.to_string() + " is too small: deterministic construction needs 2^k > N*|F| = " + std::to_string(pairs));
  }
  const std::vector<Demand> layouts = nec_layouts(net, params);
  auto finish = [&](NetworkCode code) {
    for (std::size_t t = 0; t < net.sinks().size(); ++t) {
      // F-independent selectors: the message-path terminals for the first error set.
      for (const Demand& d : layouts) {
        if (d.sink_index != t) continue;
        std::vector<EdgeId> sel;
        for (const auto& p : d.paths) {
          if (p.start_coord < static_cast<std::size_t>(params.k_msg)) sel.push_back(p.edges.back());
        }
        std::sort(sel.begin(), sel.end());
        code.sink_selectors.push_back(sel);
        break;
      }
    }
    NecReport report = verify_nec(net, code, params, layouts);
    return NecCode{std::move(code), params, std::move(report)};
  };

  if (opts.mode == NecMode::kGreedy) {
    NecCode out = finish(greedy_construct(net, params.k_msg, field, layouts, opts));
    if (!out.report.ok) throw ConsistencyError("greedy construction produced a witness of deficient rank");
    return out;
  }

  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, field.size() - 1);
  const NodeId s = net.source();
  for (std::size_t attempt = 0; attempt < opts.retries; ++attempt) {
    NetworkCode code(field);
    code.h_prime = params.k_msg;
    for (const Edge& e : net.edges()) {
      if (e.tail == s) {
        std::vector<FieldElem> row;
        for (int i = 0; i < params.k_msg; ++i) row.emplace_back(field, dist(rng));
        code.source_rows[e.id] = std::move(row);
      } else {
        for (EdgeId in : net.in_edges(e.tail)) code.local_coeffs.insert_or_assign(EdgePair{in, e.id}, FieldElem(field, dist(rng)));
      }
    }
    NecCode out = finish(std::move(code));
    if (out.report.ok) return out;
  }
  throw Infeasible("randomized construction found no valid code over " + field.to_string() + " in " + std::to_string(opts.retries) + " attempts");
}

// ---------------------------------------------------------------------------------------------------------
// Brute-force decoding

struct DecodeOptions {
  std::uint64_t budget = 50'000'000;  // candidate (message, error) pairs examined per sink
};

/// Sink observations as linear maps: message part (k rows) and one response row per edge error.
struct SinkResponse {
  std::vector<EdgeId> inputs;                       // all incoming edges of the sink
  std::vector<std::vector<FieldElem>> message_rows;  // k x |inputs|
  std::vector<std::vector<FieldElem>> error_rows;    // |E| x |inputs|
};

inline std::vector<SinkResponse> sink_responses(const Network& net, const NetworkCode& code) {
  std::vector<EdgeId> every_edge(net.edge_count());
  for (std::size_t e = 0; e < every_edge.size(); ++e) every_edge[e] = static_cast<EdgeId>(e);
  const GlobalVectors gv = propagate_extended(net, code, every_edge, scalars(code.field));
  const auto k = static_cast<std::size_t>(code.h_prime);
  std::vector<SinkResponse> out;
  for (NodeId t : net.sinks()) {
    SinkResponse r;
    r.inputs = net.in_edges(t);
    r.message_rows.assign(k, {});
    r.error_rows.assign(net.edge_count(), {});
    for (EdgeId in : r.inputs) {
      const auto& v = gv[static_cast<std::size_t>(in)];
      for (std::size_t i = 0; i < k; ++i) r.message_rows[i].push_back(v[i]);
      for (std::size_t e = 0; e < net.edge_count(); ++e) r.error_rows[e].push_back(v[k + e]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

/// Sparse additive error: edge -> symbol.
using EdgeError = std::map<EdgeId, FieldElem>;

namespace detail {

inline std::vector<std::uint64_t> observe(const SinkResponse& r, const std::vector<FieldElem>& message, const EdgeError& error,
                                          const Field& f) {
  std::vector<std::uint64_t> y(r.inputs.size(), 0);
  for (std::size_t c = 0; c < y.size(); ++c) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < message.size(); ++i) acc ^= f.mul(message[i].residue(), r.message_rows[i][c].residue());
    for (const auto& [e, x] : error) acc ^= f.mul(x.residue(), r.error_rows[static_cast<std::size_t>(e)][c].residue());
    y[c] = acc;
  }
  return y;
}

/// Calls fn(message, error) for every message in F^k and every error of support <= alpha.
template <typename Fn>
void for_each_explanation(const Field& f, std::size_t k, std::size_t edges, int alpha, Fn&& fn) {
  const std::uint64_t q = f.size();
  std::uint64_t messages = 1;
  for (std::size_t i = 0; i < k; ++i) messages *= q;
  std::vector<FieldElem> msg(k, FieldElem::zero(f));
  for (std::uint64_t mi = 0; mi < messages; ++mi) {
    std::uint64_t code = mi;
    for (std::size_t i = 0; i < k; ++i) {
      msg[i] = FieldElem(f, code % q);
      code /= q;
    }
    for (int w = 0; w <= alpha; ++w) {
      for (const auto& support : edge_subsets(edges, static_cast<std::size_t>(w), UINT64_MAX)) {
        std::uint64_t patterns = 1;
        for (int i = 0; i < w; ++i) patterns *= q - 1;
        for (std::uint64_t pi = 0; pi < patterns; ++pi) {
          EdgeError err;
          std::uint64_t c = pi;
          for (EdgeId e : support) {
            err.emplace(e, FieldElem(f, 1 + c % (q - 1)));
            c /= q - 1;
          }
          fn(msg, err);
        }
      }
    }
  }
}

inline std::uint64_t explanation_count(const Field& f, std::size_t k, std::size_t edges, int alpha) {
  const std::uint64_t q = f.size();
  std::uint64_t messages = 1;
  for (std::size_t i = 0; i < k; ++i) messages = messages > UINT64_MAX / q ? UINT64_MAX : messages * q;
  std::uint64_t errors = 0;
  for (int w = 0; w <= alpha; ++w) {
    std::uint64_t n = binomial(edges, static_cast<std::uint64_t>(w));
    for (int i = 0; i < w; ++i) n = n > UINT64_MAX / (q - 1) ? UINT64_MAX : n * (q - 1);
    errors = errors > UINT64_MAX - n ? UINT64_MAX : errors + n;
  }
  return messages > UINT64_MAX / std::max<std::uint64_t>(errors, 1) ? UINT64_MAX : messages * errors;
}

struct VecHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t x : v) h = (h ^ x) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
  }
};

}  // namespace detail

/// Per sink: the unique message consistent with what the sink observes under (message, error), or nullopt
/// when several messages explain the observation with at most alpha corrupted edges.
inline std::vector<std::optional<std::vector<FieldElem>>> decode_oracle(const Network& net, const NetworkCode& code, int alpha,
                                                                        const std::vector<FieldElem>& message, const EdgeError& error,
                                                                        const DecodeOptions& opts = {}) {
  if (message.size() != static_cast<std::size_t>(code.h_prime)) throw InvalidArgument("message length differs from the code dimension");
  if (error.size() > static_cast<std::size_t>(alpha)) {
    throw InvalidArgument("error support " + std::to_string(error.size()) + " exceeds alpha = " + std::to_string(alpha));
  }
  const std::uint64_t need = detail::explanation_count(code.field, message.size(), net.edge_count(), alpha);
  if (need > opts.budget) {
    throw BudgetExceeded("exhaustive decoding needs " + std::to_string(need) + " candidates per sink, budget is " + std::to_string(opts.budget));
  }
  const auto responses = sink_responses(net, code);
  std::vector<std::optional<std::vector<FieldElem>>> out;
  for (const SinkResponse& r : responses) {
    const auto y = detail::observe(r, message, error, code.field);
    std::optional<std::vector<FieldElem>> found;
    bool ambiguous = false;
    detail::for_each_explanation(code.field, message.size(), net.edge_count(), alpha, [&](const auto& m, const EdgeError& e) {
      if (ambiguous || detail::observe(r, m, e, code.field) != y) return;
      if (!found) found = m;
      else if (*found != m) ambiguous = true;
    });
    out.push_back(ambiguous ? std::nullopt : found);
  }
  return out;
}

struct DecodeSweep {
  bool ok = true;
  std::vector<bool> sink_ok;
};

/// Whether every sink recovers every message under every error of support <= alpha: no observation may be
/// produced by two different messages.
inline DecodeSweep decode_sweep(const Network& net, const NetworkCode& code, int alpha, const DecodeOptions& opts = {}) {
  const auto k = static_cast<std::size_t>(code.h_prime);
  const std::uint64_t need = detail::explanation_count(code.field, k, net.edge_count(), alpha);
  if (need > opts.budget) {
    throw BudgetExceeded("decode sweep needs " + std::to_string(need) + " candidates per sink, budget is " + std::to_string(opts.budget));
  }
  DecodeSweep out;
  for (const SinkResponse& r : sink_responses(net, code)) {
    std::unordered_map<std::vector<std::uint64_t>, std::vector<std::uint64_t>, detail::VecHash> seen;
    bool ok = true;
    detail::for_each_explanation(code.field, k, net.edge_count(), alpha, [&](const auto& m, const EdgeError& e) {
      if (!ok) return;
      std::vector<std::uint64_t> key;
      for (const FieldElem& x : m) key.push_back(x.residue());
      auto [it, inserted] = seen.try_emplace(detail::observe(r, m, e, code.field), key);
      if (!inserted && it->second != key) ok = false;
    });
    out.sink_ok.push_back(ok);
    if (!ok) out.ok = false;
  }
  return out;
}

}  // namespace netcode
