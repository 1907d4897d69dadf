#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "honeybee/error.hpp"
#include "honeybee/graph.hpp"
#include "honeybee/instance_io.hpp"

namespace honeybee {

// Strict partial order over dense node ids, stored transitively closed.
class PartialOrder {
 public:
  PartialOrder() = default;
  explicit PartialOrder(std::size_t n) : n_(n), less_(n * n, 0) {}

  // Builds the transitive closure of the given pairs; throws OrderError on a
  // cycle (which includes u < u).
  static PartialOrder from_pairs(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
    PartialOrder p(n);
    for (auto [u, v] : pairs) {
      if (u >= n || v >= n) throw OrderError("order pair out of range");
      p.less_[u * n + v] = 1;
    }
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t i = 0; i < n; ++i)
        if (p.less_[i * n + m])
          for (std::size_t j = 0; j < n; ++j)
            if (p.less_[m * n + j]) p.less_[i * n + j] = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (p.less_[i * n + i]) throw OrderError("order relation has a cycle");
    return p;
  }

  std::size_t size() const noexcept { return n_; }
  bool less(NodeId u, NodeId v) const { return less_[u * n_ + v] != 0; }
  bool comparable(NodeId u, NodeId v) const { return less(u, v) || less(v, u); }

  bool is_minimal(NodeId v) const {
    for (NodeId u = 0; u < n_; ++u)
      if (less(u, v)) return false;
    return true;
  }
  bool is_maximal(NodeId v) const {
    for (NodeId u = 0; u < n_; ++u)
      if (less(v, u)) return false;
    return true;
  }

  PartialOrder reversed() const {
    PartialOrder r(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r.less_[j * n_ + i] = less_[i * n_ + j];
    return r;
  }

  std::vector<std::pair<NodeId, NodeId>> pairs() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId i = 0; i < n_; ++i)
      for (NodeId j = 0; j < n_; ++j)
        if (less(i, j)) out.emplace_back(i, j);
    return out;
  }

  friend bool operator==(const PartialOrder&, const PartialOrder&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<char> less_;
};

// The graph must be the incomparability graph of the order: adjacent exactly
// when incomparable.
inline void validate_cocomparability(const ColoredGraph& g, const PartialOrder& p) {
  if (p.size() != g.size()) throw OrderError("order covers " + std::to_string(p.size()) + " nodes, graph has " +
                                             std::to_string(g.size()));
  for (NodeId u = 0; u < g.size(); ++u)
    for (NodeId v = u + 1; v < g.size(); ++v) {
      const bool adj = g.adjacent(u, v);
      if (adj == p.comparable(u, v))
        throw OrderError("nodes '" + g.name(u) + "' and '" + g.name(v) + "' are " +
                         (adj ? "adjacent but comparable" : "non-adjacent but incomparable"));
    }
}

// Order file: {"less": [["a","b"], ...]} with node names from the instance;
// the listed pairs are closed transitively.
inline PartialOrder order_from_json(const ColoredGraph& g, const json& root) {
  using namespace detail;
  require_object(root, "");
  reject_unknown(root, "", {"less"});
  const auto& arr = as_array(required(root, "", "less"), "/less");
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "/less/" + std::to_string(i);
    if (!arr[i].is_array() || arr[i].size() != 2) throw ParseError(where, "expected a pair of node ids");
    pairs.emplace_back(resolve(g, arr[i][0], where + "/0"), resolve(g, arr[i][1], where + "/1"));
  }
  return PartialOrder::from_pairs(g.size(), pairs);
}

inline PartialOrder load_order(const ColoredGraph& g, std::string_view text) {
  return order_from_json(g, detail::parse_json(text));
}

inline json order_to_json(const ColoredGraph& g, const PartialOrder& p) {
  std::vector<std::pair<std::string, std::string>> named;
  for (auto [u, v] : p.pairs()) named.emplace_back(g.name(u), g.name(v));
  std::sort(named.begin(), named.end());
  json arr = json::array();
  for (auto& [a, b] : named) arr.push_back(json::array({a, b}));
  return json{{"less", arr}};
}

namespace detail {

// Backtracking transitive orientation of the complement graph with forcing
// propagation. dir[u*n+v] = 1 means u < v.
struct OrientationSearch {
  std::size_t n;
  std::vector<char> edge;  // complement adjacency
  std::vector<char> dir;

  bool set(std::size_t u, std::size_t v, std::vector<std::pair<std::size_t, std::size_t>>& trail) {
    if (dir[u * n + v]) return true;
    if (dir[v * n + u]) return false;
    dir[u * n + v] = 1;
    trail.emplace_back(u, v);
    for (std::size_t w = 0; w < n; ++w) {
      if (w == u || w == v) continue;
      // u<v, v-w: either v<w (then u<w must be an edge) or w<v
      if (edge[v * n + w]) {
        if (dir[v * n + w] && !edge[u * n + w]) return false;
        if (!edge[u * n + w] && !set(w, v, trail)) return false;
        if (dir[v * n + w] && !set(u, w, trail)) return false;
      }
      if (edge[u * n + w]) {
        if (dir[w * n + u] && !edge[w * n + v]) return false;
        if (!edge[w * n + v] && !set(u, w, trail)) return false;
        if (dir[w * n + u] && !set(w, v, trail)) return false;
      }
    }
    return true;
  }

  void undo(std::vector<std::pair<std::size_t, std::size_t>>& trail, std::size_t mark) {
    while (trail.size() > mark) {
      auto [u, v] = trail.back();
      dir[u * n + v] = 0;
      trail.pop_back();
    }
  }

  bool solve(std::vector<std::pair<std::size_t, std::size_t>>& trail) {
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v) {
        if (!edge[u * n + v] || dir[u * n + v] || dir[v * n + u]) continue;
        for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
          const auto mark = trail.size();
          if (set(a, b, trail) && solve(trail)) return true;
          undo(trail, mark);
        }
        return false;
      }
    return true;
  }
};

}  // namespace detail

// Finds some partial order whose incomparability graph is g, by brute force.
// Intended for small inputs only.
inline std::optional<PartialOrder> find_cocomparability_order(const ColoredGraph& g) {
  constexpr std::size_t kMaxNodes = 12;
  const std::size_t n = g.size();
  if (n > kMaxNodes) throw SizeGuardExceeded("order search is limited to " + std::to_string(kMaxNodes) + " nodes");
  detail::OrientationSearch s{n, std::vector<char>(n * n, 0), std::vector<char>(n * n, 0)};
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      if (u != v && !g.adjacent(u, v)) s.edge[u * n + v] = 1;
  std::vector<std::pair<std::size_t, std::size_t>> trail;
  if (!s.solve(trail)) return std::nullopt;
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (s.dir[u * n + v]) pairs.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  auto p = PartialOrder::from_pairs(n, pairs);
  // propagation guarantees transitivity; the check is cheap insurance
  validate_cocomparability(g, p);
  return p;
}

}  // namespace honeybee
