#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "honeybee/error.hpp"
#include "honeybee/node_set.hpp"

namespace honeybee {

using Color = int;
using Weight = std::int64_t;

// Ordered list of color calls.
using ColorSequence = std::vector<Color>;

struct NodeSpec {
  std::string name;
  Color color = 0;
  Weight weight = 1;
};

// Simple undirected graph with colored, weighted nodes. Immutable once built;
// node ids are dense in [0, size()).
class ColoredGraph {
 public:
  ColoredGraph() = default;

  ColoredGraph(int k, std::vector<NodeSpec> nodes, const std::vector<std::pair<NodeId, NodeId>>& edges)
      : k_(k), nodes_(std::move(nodes)), adj_(nodes_.size()) {
    if (k_ < 1) throw InvalidInstance("k must be at least 1");
    if (nodes_.empty()) throw InvalidInstance("graph has no nodes");
    for (NodeId v = 0; v < nodes_.size(); ++v) {
      const auto& n = nodes_[v];
      if (n.color < 0 || n.color >= k_)
        throw InvalidInstance("node '" + n.name + "': color " + std::to_string(n.color) + " outside 0.." +
                              std::to_string(k_ - 1));
      if (n.weight < 1) throw InvalidInstance("node '" + n.name + "': weight must be positive");
      if (!index_.emplace(n.name, v).second) throw InvalidInstance("duplicate node id '" + n.name + "'");
      total_weight_ += n.weight;
    }
    for (auto [u, v] : edges) {
      if (u >= nodes_.size() || v >= nodes_.size()) throw InvalidInstance("edge endpoint out of range");
      if (u == v) throw InvalidInstance("self-loop on '" + nodes_[u].name + "'");
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (NodeId v = 0; v < adj_.size(); ++v) {
      auto& a = adj_[v];
      std::sort(a.begin(), a.end());
      if (std::adjacent_find(a.begin(), a.end()) != a.end())
        throw InvalidInstance("duplicate edge at '" + nodes_[v].name + "'");
    }
  }

  int k() const noexcept { return k_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  Color color(NodeId v) const { return nodes_[v].color; }
  Weight weight(NodeId v) const { return nodes_[v].weight; }
  const std::string& name(NodeId v) const { return nodes_[v].name; }
  const NodeSpec& node(NodeId v) const { return nodes_[v]; }
  const std::vector<NodeSpec>& nodes() const noexcept { return nodes_; }
  Weight total_weight() const noexcept { return total_weight_; }

  std::span<const NodeId> neighbors(NodeId v) const { return adj_[v]; }

  bool adjacent(NodeId u, NodeId v) const {
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
  }

  std::optional<NodeId> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  NodeId id(const std::string& name) const {
    auto v = find(name);
    if (!v) throw InvalidInstance("unknown node id '" + name + "'");
    return *v;
  }

  // Each edge once, as (smaller id, larger id), sorted.
  std::vector<std::pair<NodeId, NodeId>> edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId u = 0; u < adj_.size(); ++u)
      for (NodeId v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& a : adj_) n += a.size();
    return n / 2;
  }

  Weight weight_of(const NodeSet& s) const {
    Weight w = 0;
    s.for_each([&](NodeId v) { w += nodes_[v].weight; });
    return w;
  }

  NodeSet empty_set() const { return NodeSet(size()); }
  NodeSet singleton(NodeId v) const { return NodeSet::single(size(), v); }
  NodeSet all() const { return NodeSet::full(size()); }

 private:
  int k_ = 0;
  std::vector<NodeSpec> nodes_;
  std::vector<std::vector<NodeId>> adj_;
  std::unordered_map<std::string, NodeId> index_;
  Weight total_weight_ = 0;
};

inline bool is_connected(const ColoredGraph& g) {
  if (g.size() == 0) return false;
  std::vector<char> seen(g.size(), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : g.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == g.size();
}

// Whether the induced subgraph on `s` is connected (the empty set is not).
inline bool is_connected_subset(const ColoredGraph& g, const NodeSet& s) {
  std::vector<NodeId> stack;
  s.for_each([&](NodeId v) {
    if (stack.empty()) stack.push_back(v);
  });
  if (stack.empty()) return false;
  NodeSet seen = g.singleton(stack.front());
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : g.neighbors(u)) {
      if (s.contains(v) && !seen.contains(v)) {
        seen.insert(v);
        stack.push_back(v);
      }
    }
  }
  return seen == s;
}

// Γ(W, c): nodes of color c adjacent to W, or joined to a W-adjacent color-c
// node by a path of color-c nodes. Nodes in `blocked` are neither returned
// nor traversed (the duel passes the opponent territory here).
inline NodeSet color_neighborhood(const ColoredGraph& g, const NodeSet& territory, Color c,
                                  const NodeSet* blocked = nullptr) {
  NodeSet out(g.size());
  std::vector<NodeId> queue;
  auto admit = [&](NodeId v) {
    if (g.color(v) != c || out.contains(v)) return;
    if (blocked && blocked->contains(v)) return;
    out.insert(v);
    queue.push_back(v);
  };
  territory.for_each([&](NodeId w) {
    for (NodeId v : g.neighbors(w)) admit(v);
  });
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (NodeId v : g.neighbors(queue[head])) admit(v);
  return out;
}

// Nodes newly added to `territory` by calling c.
inline NodeSet gained_by(const ColoredGraph& g, const NodeSet& territory, Color c,
                         const NodeSet* blocked = nullptr) {
  return color_neighborhood(g, territory, c, blocked) - territory;
}

// W_{i+1} = W_i ∪ Γ(W_i, γ_i), applied over the whole sequence.
inline NodeSet conquer(const ColoredGraph& g, NodeSet territory, std::span<const Color> gamma) {
  for (Color c : gamma) territory |= color_neighborhood(g, territory, c);
  return territory;
}

struct Contraction {
  ColoredGraph graph;
  std::vector<NodeId> map;  // original id -> contracted id
};

// Collapses every monochromatic connected component into a single node whose
// weight is the component's total weight. Contracted ids follow the smallest
// original id in each component, and each contracted node keeps that node's
// name.
inline Contraction contract(const ColoredGraph& g) {
  const std::size_t n = g.size();
  std::vector<NodeId> comp(n, static_cast<NodeId>(-1));
  std::vector<NodeSpec> nodes;
  for (NodeId s = 0; s < n; ++s) {
    if (comp[s] != static_cast<NodeId>(-1)) continue;
    const auto id = static_cast<NodeId>(nodes.size());
    NodeSpec spec{g.name(s), g.color(s), 0};
    std::vector<NodeId> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      spec.weight += g.weight(u);
      for (NodeId v : g.neighbors(u)) {
        if (g.color(v) == g.color(s) && comp[v] == static_cast<NodeId>(-1)) {
          comp[v] = id;
          stack.push_back(v);
        }
      }
    }
    nodes.push_back(std::move(spec));
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (auto [u, v] : g.edges()) {
    NodeId a = comp[u], b = comp[v];
    if (a == b) continue;
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Contraction{ColoredGraph(g.k(), std::move(nodes), edges), std::move(comp)};
}

inline NodeSet map_set(const Contraction& c, const NodeSet& s) {
  NodeSet out(c.graph.size());
  s.for_each([&](NodeId v) { out.insert(c.map[v]); });
  return out;
}

inline bool is_properly_colored(const ColoredGraph& g) {
  for (auto [u, v] : g.edges())
    if (g.color(u) == g.color(v)) return false;
  return true;
}

// A game instance: the playing field plus the optional annotations an
// instance file may carry.
struct Instance {
  ColoredGraph graph;
  std::optional<NodeId> start;
  std::optional<NodeId> start_a;
  std::optional<NodeId> start_b;
  std::vector<NodeId> clique;      // split partition (clique side), if designated
  std::vector<NodeId> outer_face;  // closed outer-face walk, if designated
};

}  // namespace honeybee
