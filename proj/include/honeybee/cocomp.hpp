#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <tuple>
#include <vector>

#include "honeybee/error.hpp"
#include "honeybee/graph.hpp"
#include "honeybee/partial_order.hpp"
#include "honeybee/solitaire.hpp"

namespace honeybee {

// A co-comparability instance ready for the dynamic programs: monochromatic
// components contracted (the start node kept on its own), the start node
// given a private color, and the order carried over to the contracted nodes.
//
// Recoloring the start is harmless because it is in the territory from the
// outset and conquest never looks at the colors of territory nodes. Keeping
// it apart from its monochromatic component keeps the dynamics identical to
// the uncontracted graph, where its same-colored neighbours still have to be
// called.
struct CocompInstance {
  ColoredGraph graph;
  PartialOrder order;
  NodeId start = 0;
  std::vector<NodeId> map;  // original id -> prepared id
};

enum class CocompMode { Extremal, General };

inline CocompInstance prepare_cocomp(const ColoredGraph& g, const PartialOrder& order, NodeId v0) {
  if (v0 >= g.size()) throw InvalidInstance("start node out of range");
  validate_cocomparability(g, order);
  const std::size_t n = g.size();

  std::vector<NodeId> parent(n);
  std::iota(parent.begin(), parent.end(), NodeId{0});
  auto find = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [u, v] : g.edges())
    if (u != v0 && v != v0 && g.color(u) == g.color(v)) parent[std::max(find(u), find(v))] = std::min(find(u), find(v));

  std::vector<NodeId> map(n, static_cast<NodeId>(-1));
  std::vector<NodeSpec> nodes;
  for (NodeId v = 0; v < n; ++v) {
    const NodeId root = find(v);
    if (map[root] == static_cast<NodeId>(-1)) {
      map[root] = static_cast<NodeId>(nodes.size());
      nodes.push_back({g.name(root), v == v0 ? g.k() : g.color(root), 0});
    }
    map[v] = map[root];
    nodes[map[v]].weight += g.weight(v);
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (auto [u, v] : g.edges())
    if (map[u] != map[v]) edges.emplace_back(std::min(map[u], map[v]), std::max(map[u], map[v]));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  ColoredGraph h(g.k() + 1, std::move(nodes), edges);

  std::vector<std::pair<NodeId, NodeId>> less;
  for (auto [u, v] : order.pairs())
    if (map[u] != map[v] && !h.adjacent(map[u], map[v])) less.emplace_back(map[u], map[v]);
  auto p = PartialOrder::from_pairs(h.size(), less);
  validate_cocomparability(h, p);
  return CocompInstance{std::move(h), std::move(p), map[v0], std::move(map)};
}

namespace detail {

inline constexpr int kUnreached = std::numeric_limits<int>::max() / 4;

// Least and greatest node of every color class. With a proper coloring the
// nodes of a class are pairwise non-adjacent, hence pairwise comparable.
struct ClassExtremes {
  std::vector<NodeId> lo, hi;  // indexed by color, -1 when the class is empty

  ClassExtremes(const ColoredGraph& g, const PartialOrder& p)
      : lo(static_cast<std::size_t>(g.k()), static_cast<NodeId>(-1)), hi(lo) {
    for (NodeId v = 0; v < g.size(); ++v) {
      auto c = static_cast<std::size_t>(g.color(v));
      if (lo[c] == static_cast<NodeId>(-1) || p.less(v, lo[c])) lo[c] = v;
      if (hi[c] == static_cast<NodeId>(-1) || p.less(hi[c], v)) hi[c] = v;
    }
  }
};

// Finishes a partial call list into a full conquest: calls that gain nothing
// are dropped, then the smallest gaining color is called until done.
inline ColorSequence complete_witness(const ColoredGraph& g, NodeId v0, const ColorSequence& head) {
  ColorSequence out;
  NodeSet w = g.singleton(v0);
  for (Color c : head) {
    NodeSet gain = gained_by(g, w, c);
    if (gain.empty()) continue;
    w |= gain;
    out.push_back(c);
  }
  while (!w.is_full()) {
    for (Color c = 0; c < g.k(); ++c) {
      NodeSet gain = gained_by(g, w, c);
      if (gain.empty()) continue;
      w |= gain;
      out.push_back(c);
      break;
    }
  }
  return out;
}

struct DpOutcome {
  int value = kUnreached;  // OPT part, without the per-class term
  ColorSequence head;      // calls along the optimal DP path
};

// Start at a minimal element: shortest path from v0 to a maximal element
// where entering a node costs 0 if it is the greatest of its class and 1
// otherwise.
inline DpOutcome extremal_shortest_path(const ColoredGraph& g, const PartialOrder& p, NodeId v0) {
  const ClassExtremes ex(g, p);
  const std::size_t n = g.size();
  auto cost = [&](NodeId v) { return ex.hi[static_cast<std::size_t>(g.color(v))] == v ? 0 : 1; };
  std::vector<int> dist(n, kUnreached);
  std::vector<NodeId> pred(n, static_cast<NodeId>(-1));
  using Item = std::pair<int, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[v0] = 0;
  pq.emplace(0, v0);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (NodeId v : g.neighbors(u)) {
      const int nd = d + cost(v);
      if (nd < dist[v]) {
        dist[v] = nd;
        pred[v] = u;
        pq.emplace(nd, v);
      }
    }
  }
  DpOutcome out;
  NodeId best = static_cast<NodeId>(-1);
  for (NodeId v = 0; v < n; ++v)
    if (p.is_maximal(v) && dist[v] < out.value) {
      out.value = dist[v];
      best = v;
    }
  std::vector<NodeId> path;
  for (NodeId v = best; v != v0; v = pred[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  for (NodeId v : path) out.head.push_back(g.color(v));
  return out;
}

// Same start, as the recurrence D(v) = δ_v + min over colors c of
// D(u) for u a color-c neighbour of v, settled in increasing value. The
// minimum runs over every neighbour of a color, not only the least one:
// restricting to the least neighbour loses optimal paths.
inline int extremal_recurrence(const ColoredGraph& g, const PartialOrder& p, NodeId v0) {
  const ClassExtremes ex(g, p);
  const std::size_t n = g.size();
  std::vector<int> D(n, kUnreached);
  D[v0] = 0;
  // values are bounded by n, so settle layer by layer
  for (int level = 0; level <= static_cast<int>(n); ++level) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (NodeId v = 0; v < n; ++v) {
        if (D[v] <= level) continue;
        const int delta = ex.hi[static_cast<std::size_t>(g.color(v))] == v ? 0 : 1;
        for (Color c = 0; c < g.k(); ++c) {
          int best = kUnreached;
          for (NodeId u : g.neighbors(v))
            if (g.color(u) == c) best = std::min(best, D[u]);
          if (best + delta <= level && best + delta < D[v]) {
            D[v] = best + delta;
            changed = true;
          }
        }
      }
    }
  }
  int value = kUnreached;
  for (NodeId v = 0; v < n; ++v)
    if (p.is_maximal(v)) value = std::min(value, D[v]);
  return value;
}

// Interior start. State (v, w): v is the lowest and w the highest node
// reached so far on a connected route through the territory. A move enters
// a node x adjacent to v or w, extending the low end (x below or beside v0)
// or the high end (x above or beside v0); a single call may also extend both
// ends at once through two nodes of the same color. Entering x is free when
// x completes its class: x is an extreme of its class and the opposite
// extreme o is already covered by the route, that is o is an end, touches
// an end, or lies strictly between the two ends.
inline DpOutcome general_pair_dp(const ColoredGraph& g, const PartialOrder& p, NodeId v0) {
  const ClassExtremes ex(g, p);
  const std::size_t n = g.size();

  auto covered = [&](NodeId o, NodeId lo, NodeId hi) {
    if (o == lo || o == hi) return true;
    if (g.adjacent(o, lo) || g.adjacent(o, hi)) return true;
    return p.less(lo, o) && p.less(o, hi);
  };
  auto delta = [&](NodeId lo, NodeId hi, NodeId x) {
    const auto c = static_cast<std::size_t>(g.color(x));
    NodeId o;
    if (ex.lo[c] == x) o = ex.hi[c];
    else if (ex.hi[c] == x) o = ex.lo[c];
    else return 1;
    return covered(o, lo, hi) ? 0 : 1;
  };

  std::vector<char> down(n, 0), up(n, 0);
  for (NodeId u = 0; u < n; ++u) {
    down[u] = u == v0 || p.less(u, v0) || g.adjacent(u, v0);
    up[u] = u == v0 || p.less(v0, u) || g.adjacent(u, v0);
  }

  struct Back {
    std::uint32_t from;
    Color call;
  };
  std::vector<int> D(n * n, kUnreached);
  std::vector<Back> back(n * n, {static_cast<std::uint32_t>(-1), -1});
  using Item = std::tuple<int, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  auto key = [n](NodeId v, NodeId w) { return static_cast<std::uint32_t>(v * n + w); };
  auto relax = [&](std::uint32_t from, NodeId v, NodeId w, int d, Color call) {
    const auto k = key(v, w);
    if (d < D[k]) {
      D[k] = d;
      back[k] = {from, call};
      pq.emplace(d, k);
    }
  };
  D[key(v0, v0)] = 0;
  pq.emplace(0, key(v0, v0));

  std::vector<NodeId> cand;
  while (!pq.empty()) {
    auto [d, k] = pq.top();
    pq.pop();
    if (d > D[k]) continue;
    const NodeId v = static_cast<NodeId>(k / n), w = static_cast<NodeId>(k % n);
    cand.clear();
    for (NodeId x = 0; x < n; ++x)
      if (g.adjacent(v, x) || g.adjacent(w, x)) cand.push_back(x);
    for (NodeId x : cand) {
      if (up[x]) relax(k, v, x, d + delta(v, x, x), g.color(x));
      if (down[x]) relax(k, x, w, d + delta(x, w, x), g.color(x));
    }
    for (NodeId x : cand) {
      if (!up[x]) continue;
      for (NodeId y : cand) {
        if (y == x || !down[y] || g.color(y) != g.color(x)) continue;
        relax(k, y, x, d + delta(y, x, x) * delta(y, x, y), g.color(x));
      }
    }
  }

  DpOutcome out;
  std::uint32_t best = static_cast<std::uint32_t>(-1);
  for (NodeId v = 0; v < n; ++v) {
    if (!p.is_minimal(v)) continue;
    for (NodeId w = 0; w < n; ++w)
      if (p.is_maximal(w) && D[key(v, w)] < out.value) {
        out.value = D[key(v, w)];
        best = key(v, w);
      }
  }
  for (auto k = best; back[k].from != static_cast<std::uint32_t>(-1); k = back[k].from)
    out.head.push_back(back[k].call);
  std::reverse(out.head.begin(), out.head.end());
  return out;
}

}  // namespace detail

inline int classes_to_complete(const CocompInstance& ci) { return classes_to_complete(ci.graph, ci.start); }

// Essential length of a call sequence: its length minus the free steps.
// Extremal mode (start minimal or maximal) counts a step as free when it
// conquers the far extreme of some color class (the greatest node for a
// minimal start, the least for a maximal one). General mode counts a step as
// free when it conquers the second of the two extremes of some class.
inline int essential_length(const CocompInstance& ci, const ColorSequence& gamma, CocompMode mode) {
  const auto& g = ci.graph;
  const bool minimal = ci.order.is_minimal(ci.start);
  const bool maximal = ci.order.is_maximal(ci.start);
  if (mode == CocompMode::Extremal && !minimal && !maximal)
    throw OrderError("extremal mode needs a minimal or maximal start node");
  const detail::ClassExtremes ex(g, ci.order);
  NodeSet w = g.singleton(ci.start);
  int free_steps = 0;
  for (Color c : gamma) {
    if (c < 0 || c >= g.k()) throw InvalidInstance("color " + std::to_string(c) + " out of range");
    const NodeSet before = w;
    w |= color_neighborhood(g, w, c);
    bool is_free = false;
    for (std::size_t col = 0; col < ex.lo.size() && !is_free; ++col) {
      const NodeId lo = ex.lo[col], hi = ex.hi[col];
      if (lo == static_cast<NodeId>(-1)) continue;
      if (mode == CocompMode::Extremal) {
        const NodeId far = minimal ? hi : lo;
        is_free = !before.contains(far) && w.contains(far);
      } else {
        const bool had = before.contains(lo) && before.contains(hi);
        is_free = !had && w.contains(lo) && w.contains(hi);
      }
    }
    if (is_free) ++free_steps;
  }
  return static_cast<int>(gamma.size()) - free_steps;
}

inline int essential_length(const ColoredGraph& g, const PartialOrder& order, NodeId v0, const ColorSequence& gamma,
                            CocompMode mode) {
  for (Color c : gamma)
    if (c < 0 || c >= g.k()) throw InvalidInstance("color " + std::to_string(c) + " out of range");
  return essential_length(prepare_cocomp(g, order, v0), gamma, mode);
}

// Optimal solitaire length on a co-comparability graph, with a witness.
// Minimal and maximal starts use the shortest-path program (a maximal start
// on the reversed order); any other start uses the pair program.
inline SolveResult solve_cocomp(const ColoredGraph& g, const PartialOrder& order, NodeId v0) {
  if (!is_connected(g)) throw InvalidInstance("graph is disconnected");
  const auto t0 = std::chrono::steady_clock::now();
  const CocompInstance ci = prepare_cocomp(g, order, v0);
  SolveResult r;
  r.method = "cocomp";
  const int classes = classes_to_complete(ci);

  detail::DpOutcome dp;
  std::string mode;
  if (ci.graph.size() == 1) {
    dp.value = 0;
    mode = "extremal";
  } else if (ci.order.is_minimal(ci.start)) {
    dp = detail::extremal_shortest_path(ci.graph, ci.order, ci.start);
    mode = "extremal";
  } else if (ci.order.is_maximal(ci.start)) {
    dp = detail::extremal_shortest_path(ci.graph, ci.order.reversed(), ci.start);
    mode = "extremal-reversed";
  } else {
    dp = detail::general_pair_dp(ci.graph, ci.order, ci.start);
    mode = "general";
  }
  if (dp.value >= detail::kUnreached) throw OrderError("no route to an extremal node; order inconsistent");

  r.sequence = detail::complete_witness(ci.graph, ci.start, dp.head);
  finish_result(r, g, v0);
  r.extra["mode"] = mode;
  r.extra["optimum"] = dp.value + classes;
  r.extra["essential_optimum"] = dp.value;
  r.stats.expanded = ci.graph.size();
  r.stats.elapsed_ms = detail::ms_since(t0);
  return r;
}

}  // namespace honeybee
