#pragma once

// Single-source acyclic multigraphs with unit-capacity edges.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "netcode/error.hpp"

namespace netcode {

using NodeId = int;
using EdgeId = int;

struct Edge {
  EdgeId id = 0;
  NodeId tail = 0;
  NodeId head = 0;
};

class Network {
 public:
  NodeId add_node(const std::string& name) {
    if (index_.count(name) != 0) throw InvalidArgument("duplicate node '" + name + "'");
    const auto id = static_cast<NodeId>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    in_.emplace_back();
    out_.emplace_back();
    return id;
  }

  NodeId node(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw InvalidArgument("unknown node '" + name + "'");
    return it->second;
  }

  bool has_node(const std::string& name) const { return index_.count(name) != 0; }

  /// Appends an edge; ids are dense and assigned in insertion order.
  EdgeId add_edge(NodeId tail, NodeId head) {
    check_node(tail);
    check_node(head);
    const auto id = static_cast<EdgeId>(edges_.size());
    edges_.push_back({id, tail, head});
    out_[static_cast<std::size_t>(tail)].push_back(id);
    in_[static_cast<std::size_t>(head)].push_back(id);
    return id;
  }

  EdgeId add_edge(const std::string& tail, const std::string& head) { return add_edge(node(tail), node(head)); }

  void set_source(NodeId s) {
    check_node(s);
    source_ = s;
  }

  void add_sink(NodeId t) {
    check_node(t);
    if (std::find(sinks_.begin(), sinks_.end(), t) != sinks_.end()) {
      throw InvalidArgument("duplicate sink '" + names_[static_cast<std::size_t>(t)] + "'");
    }
    sinks_.push_back(t);
  }

  std::size_t node_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const {
    check_edge(e);
    return edges_[static_cast<std::size_t>(e)];
  }
  const std::string& name(NodeId v) const { return names_[static_cast<std::size_t>(v)]; }
  const std::vector<std::string>& names() const { return names_; }

  NodeId source() const {
    if (!source_) throw InvalidArgument("network has no source");
    return *source_;
  }
  bool has_source() const { return source_.has_value(); }
  const std::vector<NodeId>& sinks() const { return sinks_; }

  const std::vector<EdgeId>& in_edges(NodeId v) const { return in_[static_cast<std::size_t>(v)]; }
  const std::vector<EdgeId>& out_edges(NodeId v) const { return out_[static_cast<std::size_t>(v)]; }

  void check_edge(EdgeId e) const {
    if (e < 0 || static_cast<std::size_t>(e) >= edges_.size()) throw InvalidArgument("invalid edge id " + std::to_string(e));
  }

  /// Kahn's algorithm with smallest-id-first tie break; nullopt when a cycle exists.
  std::optional<std::vector<NodeId>> topological_order() const {
    std::vector<std::size_t> indeg(names_.size());
    for (const Edge& e : edges_) ++indeg[static_cast<std::size_t>(e.head)];
    std::set<NodeId> ready;
    for (std::size_t v = 0; v < names_.size(); ++v) {
      if (indeg[v] == 0) ready.insert(static_cast<NodeId>(v));
    }
    std::vector<NodeId> order;
    while (!ready.empty()) {
      const NodeId v = *ready.begin();
      ready.erase(ready.begin());
      order.push_back(v);
      for (EdgeId e : out_edges(v)) {
        const auto w = static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].head);
        if (--indeg[w] == 0) ready.insert(static_cast<NodeId>(w));
      }
    }
    if (order.size() != names_.size()) return std::nullopt;
    return order;
  }

  /// Edges ordered by the topological position of their tail, then by id.
  std::vector<EdgeId> edge_order() const {
    auto order = topological_order();
    if (!order) throw InvalidArgument("network contains a cycle");
    std::vector<EdgeId> out;
    out.reserve(edges_.size());
    for (NodeId v : *order) {
      for (EdgeId e : out_edges(v)) out.push_back(e);
    }
    return out;
  }

 private:
  void check_node(NodeId v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= names_.size()) throw InvalidArgument("invalid node id " + std::to_string(v));
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> in_;
  std::vector<std::vector<EdgeId>> out_;
  std::optional<NodeId> source_;
  std::vector<NodeId> sinks_;
};

/// Unit-capacity flow with deterministic augmentation: DFS over residual arcs, forward arcs scanned before
/// backward ones, each in ascending edge id.
class UnitFlow {
 public:
  explicit UnitFlow(const Network& net) : net_(&net), flow_(net.edge_count(), 0), blocked_(net.edge_count(), 0) {}

  /// Edges that augmenting paths may not use.
  void block(EdgeId e) { blocked_[static_cast<std::size_t>(e)] = 1; }
  void unblock(EdgeId e) { blocked_[static_cast<std::size_t>(e)] = 0; }

  bool carries(EdgeId e) const { return flow_[static_cast<std::size_t>(e)] != 0; }

  /// Push one unit from `from` to `to`; returns false if no augmenting path exists.
  bool augment(NodeId from, NodeId to) {
    std::vector<char> seen(net_->node_count(), 0);
    std::vector<std::pair<EdgeId, bool>> path;  // (edge, forward?)
    if (!dfs(from, to, seen, path)) return false;
    for (auto [e, forward] : path) flow_[static_cast<std::size_t>(e)] = forward ? 1 : 0;
    return true;
  }

  /// Augment until `limit` units or saturation; returns units pushed.
  int augment_all(NodeId from, NodeId to, int limit = -1) {
    int pushed = 0;
    while ((limit < 0 || pushed < limit) && augment(from, to)) ++pushed;
    return pushed;
  }

  /// Decompose the current flow out of `from` into edge-id paths ending at `to`.
  std::vector<std::vector<EdgeId>> paths(NodeId from, NodeId to) const {
    std::vector<char> used(net_->edge_count(), 0);
    std::vector<std::vector<EdgeId>> out;
    for (EdgeId first : net_->out_edges(from)) {
      if (!carries(first) || used[static_cast<std::size_t>(first)]) continue;
      std::vector<EdgeId> path{first};
      used[static_cast<std::size_t>(first)] = 1;
      NodeId v = net_->edge(first).head;
      while (v != to) {
        EdgeId next = -1;
        for (EdgeId e : net_->out_edges(v)) {
          if (carries(e) && !used[static_cast<std::size_t>(e)]) {
            next = e;
            break;
          }
        }
        if (next < 0) break;
        used[static_cast<std::size_t>(next)] = 1;
        path.push_back(next);
        v = net_->edge(next).head;
      }
      if (v == to) out.push_back(std::move(path));
    }
    return out;
  }

 private:
  bool dfs(NodeId v, NodeId to, std::vector<char>& seen, std::vector<std::pair<EdgeId, bool>>& path) {
    if (v == to) return true;
    seen[static_cast<std::size_t>(v)] = 1;
    for (EdgeId e : net_->out_edges(v)) {
      const auto ue = static_cast<std::size_t>(e);
      const NodeId w = net_->edge(e).head;
      if (flow_[ue] || blocked_[ue] || seen[static_cast<std::size_t>(w)]) continue;
      path.emplace_back(e, true);
      if (dfs(w, to, seen, path)) return true;
      path.pop_back();
    }
    for (EdgeId e : net_->in_edges(v)) {
      const auto ue = static_cast<std::size_t>(e);
      const NodeId w = net_->edge(e).tail;
      if (!flow_[ue] || seen[static_cast<std::size_t>(w)]) continue;
      path.emplace_back(e, false);
      if (dfs(w, to, seen, path)) return true;
      path.pop_back();
    }
    return false;
  }

  const Network* net_;
  std::vector<char> flow_;
  std::vector<char> blocked_;
};

inline int max_flow(const Network& net, NodeId from, NodeId to) {
  UnitFlow flow(net);
  return flow.augment_all(from, to);
}

struct FlowProfile {
  std::vector<int> h_per_sink;  // parallel to Network::sinks()
  int h = 0;
  int lambda = 0;
};

/// Checks acyclicity, source/sink sanity and reachability, then computes per-sink mincuts and the longest
/// source-to-sink path length in edges.
inline FlowProfile validate(const Network& net) {
  if (!net.has_source()) throw InvalidArgument("network has no source");
  if (net.sinks().empty()) throw InvalidArgument("network has no sinks");
  const NodeId s = net.source();
  for (NodeId t : net.sinks()) {
    if (t == s) throw InvalidArgument("sink '" + net.name(t) + "' is the source");
  }
  if (!net.in_edges(s).empty()) {
    throw InvalidArgument("source '" + net.name(s) + "' has incoming edge " + std::to_string(net.in_edges(s).front()));
  }
  const auto order = net.topological_order();
  if (!order) {
    // Witness: an edge whose head is still on the DFS stack.
    std::vector<int> state(net.node_count(), 0);
    EdgeId witness = -1;
    auto visit = [&](auto&& self, NodeId v) -> void {
      state[static_cast<std::size_t>(v)] = 1;
      for (EdgeId e : net.out_edges(v)) {
        if (witness >= 0) return;
        const NodeId w = net.edge(e).head;
        if (state[static_cast<std::size_t>(w)] == 1) {
          witness = e;
          return;
        }
        if (state[static_cast<std::size_t>(w)] == 0) self(self, w);
      }
      state[static_cast<std::size_t>(v)] = 2;
    };
    for (std::size_t v = 0; v < net.node_count() && witness < 0; ++v) {
      if (state[v] == 0) visit(visit, static_cast<NodeId>(v));
    }
    const Edge& e = net.edge(witness);
    throw InvalidArgument("network contains a cycle through back-edge " + std::to_string(witness) + " (" +
                          net.name(e.tail) + " -> " + net.name(e.head) + ")");
  }
  std::vector<int> longest(net.node_count(), -1);
  longest[static_cast<std::size_t>(s)] = 0;
  for (NodeId v : *order) {
    const int lv = longest[static_cast<std::size_t>(v)];
    if (lv < 0) continue;
    for (EdgeId e : net.out_edges(v)) {
      auto& lw = longest[static_cast<std::size_t>(net.edge(e).head)];
      lw = std::max(lw, lv + 1);
    }
  }
  FlowProfile out;
  out.h = -1;
  for (NodeId t : net.sinks()) {
    const int lt = longest[static_cast<std::size_t>(t)];
    if (lt < 0) throw InvalidArgument("sink '" + net.name(t) + "' is unreachable from the source");
    out.lambda = std::max(out.lambda, lt);
    const int ht = max_flow(net, s, t);
    out.h_per_sink.push_back(ht);
    out.h = out.h < 0 ? ht : std::min(out.h, ht);
  }
  return out;
}

/// Exactly `count` pairwise edge-disjoint paths from `from` to `to`.
inline std::vector<std::vector<EdgeId>> edge_disjoint_paths(const Network& net, NodeId from, NodeId to, int count) {
  if (count < 0) throw InvalidArgument("negative path count");
  UnitFlow flow(net);
  const int got = flow.augment_all(from, to, count);
  if (got < count) {
    throw Infeasible("requested " + std::to_string(count) + " edge-disjoint paths from '" + net.name(from) + "' to '" +
                     net.name(to) + "' but the max-flow is " + std::to_string(max_flow(net, from, to)));
  }
  return flow.paths(from, to);
}

/// Source -> n intermediates -> one sink per h-subset (lexicographic). Source edges first, then each sink's
/// incoming edges in sink order.
inline Network gen_combination_network(int n, int h) {
  if (h < 1 || h > n) throw InvalidArgument("combination network needs 1 <= h <= n, got n=" + std::to_string(n) + " h=" + std::to_string(h));
  Network net;
  const NodeId s = net.add_node("s");
  net.set_source(s);
  std::vector<NodeId> mid;
  for (int i = 1; i <= n; ++i) mid.push_back(net.add_node("v" + std::to_string(i)));
  for (NodeId v : mid) net.add_edge(s, v);
  std::vector<int> subset(static_cast<std::size_t>(h));
  for (int i = 0; i < h; ++i) subset[static_cast<std::size_t>(i)] = i;
  int sink_no = 0;
  while (true) {
    const NodeId t = net.add_node("t" + std::to_string(++sink_no));
    net.add_sink(t);
    for (int i : subset) net.add_edge(mid[static_cast<std::size_t>(i)], t);
    int pos = h - 1;
    while (pos >= 0 && subset[static_cast<std::size_t>(pos)] == n - h + pos) --pos;
    if (pos < 0) break;
    ++subset[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < h; ++i) subset[static_cast<std::size_t>(i)] = subset[static_cast<std::size_t>(i - 1)] + 1;
  }
  return net;
}

/// The 7-node, 9-edge butterfly with sinks t1, t2.
inline Network gen_butterfly() {
  Network net;
  for (const char* n : {"s", "a", "b", "c", "d", "t1", "t2"}) net.add_node(n);
  net.set_source(net.node("s"));
  for (auto [u, v] : std::vector<std::pair<const char*, const char*>>{
           {"s", "a"}, {"s", "b"}, {"a", "c"}, {"b", "c"}, {"c", "d"}, {"a", "t1"}, {"b", "t2"}, {"d", "t1"}, {"d", "t2"}}) {
    net.add_edge(u, v);
  }
  net.add_sink(net.node("t1"));
  net.add_sink(net.node("t2"));
  return net;
}

/// s => t over `m` parallel edges.
inline Network gen_parallel(int m) {
  if (m < 1) throw InvalidArgument("parallel network needs at least one edge");
  Network net;
  const NodeId s = net.add_node("s");
  const NodeId t = net.add_node("t");
  net.set_source(s);
  net.add_sink(t);
  for (int i = 0; i < m; ++i) net.add_edge(s, t);
  return net;
}

/// Result of splicing error taps into a network.
struct TappedNetwork {
  Network net;                         // source is the imaginary source s'
  NodeId imaginary_source = -1;
  std::vector<EdgeId> tap_edges;       // s' -> v_e, parallel to the tapped edge list
  std::vector<EdgeId> feed_edges;      // k edges s' -> s
  std::map<EdgeId, std::pair<EdgeId, EdgeId>> split;  // original e -> (upstream half, downstream half)
};

/// Splits every edge e = (u,w) of `tapped` into (u,v_e),(v_e,w), adds s' with one edge to each v_e and
/// `feed` edges s' -> s. Untapped edges and the upstream halves keep their original ids.
inline TappedNetwork insert_error_tap(const Network& net, const std::vector<EdgeId>& tapped, int feed) {
  if (feed < 0) throw InvalidArgument("negative feed edge count");
  std::set<EdgeId> distinct;
  for (EdgeId e : tapped) {
    net.check_edge(e);
    if (!distinct.insert(e).second) throw InvalidArgument("edge " + std::to_string(e) + " tapped twice");
  }
  TappedNetwork out;
  Network& aug = out.net;
  for (const std::string& n : net.names()) aug.add_node(n);
  std::string sprime = "s'";
  while (aug.has_node(sprime)) sprime += "'";
  std::vector<NodeId> mid(net.edge_count(), -1);
  for (EdgeId e : tapped) {
    std::string name = "tap" + std::to_string(e);
    while (aug.has_node(name)) name += "'";
    mid[static_cast<std::size_t>(e)] = aug.add_node(name);
  }
  out.imaginary_source = aug.add_node(sprime);
  for (const Edge& e : net.edges()) {
    const NodeId m = mid[static_cast<std::size_t>(e.id)];
    aug.add_edge(e.tail, m >= 0 ? m : e.head);
  }
  for (EdgeId e : tapped) {
    const EdgeId down = aug.add_edge(mid[static_cast<std::size_t>(e)], net.edge(e).head);
    out.split.emplace(e, std::make_pair(e, down));
  }
  for (EdgeId e : tapped) out.tap_edges.push_back(aug.add_edge(out.imaginary_source, mid[static_cast<std::size_t>(e)]));
  for (int i = 0; i < feed; ++i) out.feed_edges.push_back(aug.add_edge(out.imaginary_source, net.source()));
  aug.set_source(out.imaginary_source);
  for (NodeId t : net.sinks()) aug.add_sink(t);
  return out;
}

}  // namespace netcode
