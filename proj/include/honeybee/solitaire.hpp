#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "honeybee/error.hpp"
#include "honeybee/graph.hpp"
#include "honeybee/instance_io.hpp"

namespace honeybee {

struct SolveStats {
  std::size_t expanded = 0;  // territories whose successors were generated
  std::size_t stored = 0;    // distinct territories seen
  double elapsed_ms = 0.0;
};

struct SolveResult {
  ColorSequence sequence;
  int length = 0;
  int essential_length = 0;
  std::string method;
  SolveStats stats;
  json extra = json::object();  // method-specific diagnostics
};

inline constexpr std::size_t kDefaultBudget = 5'000'000;

// Number of color classes a full conquest from v0 must call at least once:
// the distinct colors among V - {v0}.
inline int classes_to_complete(const ColoredGraph& g, NodeId v0) {
  std::vector<char> seen(static_cast<std::size_t>(g.k()), 0);
  int n = 0;
  for (NodeId v = 0; v < g.size(); ++v) {
    if (v == v0) continue;
    auto& s = seen[static_cast<std::size_t>(g.color(v))];
    if (!s) {
      s = 1;
      ++n;
    }
  }
  return n;
}

inline void finish_result(SolveResult& r, const ColoredGraph& g, NodeId v0) {
  r.length = static_cast<int>(r.sequence.size());
  r.essential_length = r.length - classes_to_complete(g, v0);
}

// Serialized SolveResult. Wall-clock time is left out unless asked for, so
// repeated runs produce identical bytes.
inline json result_to_json(const SolveResult& r, bool with_timing = false) {
  json j;
  j["method"] = r.method;
  j["length"] = r.length;
  j["essential_length"] = r.essential_length;
  j["sequence"] = r.sequence;
  json stats;
  stats["expanded"] = r.stats.expanded;
  stats["stored"] = r.stats.stored;
  if (with_timing) stats["elapsed_ms"] = r.stats.elapsed_ms;
  j["stats"] = std::move(stats);
  if (!r.extra.empty()) j["details"] = r.extra;
  return j;
}

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

inline void check_start(const ColoredGraph& g, NodeId v0) {
  if (v0 >= g.size()) throw InvalidInstance("start node out of range");
  if (!is_connected(g)) throw InvalidInstance("graph is disconnected");
}

// Breadth-first search over territories. Layers are expanded in discovery
// order with colors tried in increasing order, so the first time a territory
// is reached it is reached by its lexicographically smallest shortest
// sequence. Returns nullopt when max_depth is hit without full conquest.
inline std::optional<ColorSequence> territory_bfs(const ColoredGraph& g, NodeId v0, std::size_t budget,
                                                  int max_depth, SolveStats& stats,
                                                  const ColorSequence& incumbent) {
  const NodeSet start = g.singleton(v0);
  if (start.is_full()) return ColorSequence{};

  struct Entry {
    NodeSet territory;
    std::size_t parent;
    Color call;
  };
  std::vector<Entry> entries;
  std::unordered_map<NodeSet, std::size_t, NodeSetHash> index;
  entries.push_back({start, static_cast<std::size_t>(-1), -1});
  index.emplace(start, 0);

  auto unwind = [&](std::size_t i) {
    ColorSequence seq;
    while (entries[i].parent != static_cast<std::size_t>(-1)) {
      seq.push_back(entries[i].call);
      i = entries[i].parent;
    }
    std::reverse(seq.begin(), seq.end());
    return seq;
  };

  std::size_t layer_begin = 0, layer_end = 1;
  for (int depth = 0; depth < max_depth && layer_begin < layer_end; ++depth) {
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      ++stats.expanded;
      for (Color c = 0; c < g.k(); ++c) {
        NodeSet gain = gained_by(g, entries[i].territory, c);
        if (gain.empty()) continue;
        NodeSet next = entries[i].territory | gain;
        if (index.count(next)) continue;
        const std::size_t id = entries.size();
        const bool done = next.is_full();
        index.emplace(next, id);
        entries.push_back({std::move(next), i, c});
        if (done) {
          stats.stored = entries.size();
          return unwind(id);
        }
        if (entries.size() > budget) {
          stats.stored = entries.size();
          throw BudgetExceeded("state budget of " + std::to_string(budget) + " exceeded at depth " +
                                   std::to_string(depth + 1),
                               entries.size() - layer_end, incumbent);
        }
      }
    }
    layer_begin = layer_end;
    layer_end = entries.size();
  }
  stats.stored = entries.size();
  return std::nullopt;
}

}  // namespace detail

// Greedy: always call the color with the largest newly conquered weight,
// smallest color id on ties.
inline SolveResult solve_greedy(const ColoredGraph& g, NodeId v0) {
  detail::check_start(g, v0);
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult r;
  r.method = "greedy";
  NodeSet w = g.singleton(v0);
  while (!w.is_full()) {
    Color best = -1;
    Weight best_gain = 0;
    NodeSet best_set;
    for (Color c = 0; c < g.k(); ++c) {
      NodeSet gain = gained_by(g, w, c);
      const Weight gw = g.weight_of(gain);
      if (gw > best_gain) {
        best_gain = gw;
        best = c;
        best_set = std::move(gain);
      }
    }
    // a connected graph always offers a gaining color while nodes are free
    w |= best_set;
    r.sequence.push_back(best);
    ++r.stats.expanded;
  }
  finish_result(r, g, v0);
  r.stats.elapsed_ms = detail::ms_since(t0);
  return r;
}

// Minimum-length full conquest by breadth-first search over territories;
// ties go to the lexicographically smallest sequence.
inline SolveResult solve_exact(const ColoredGraph& g, NodeId v0, std::size_t budget = kDefaultBudget) {
  detail::check_start(g, v0);
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult r;
  r.method = "exact";
  const ColorSequence incumbent = solve_greedy(g, v0).sequence;
  auto seq = detail::territory_bfs(g, v0, budget, std::numeric_limits<int>::max(), r.stats, incumbent);
  r.sequence = std::move(*seq);
  finish_result(r, g, v0);
  r.stats.elapsed_ms = detail::ms_since(t0);
  return r;
}

// Clique side of a split partition. Uses the designated clique when given
// (validated), otherwise recognizes one from the degree sequence.
inline std::vector<NodeId> split_partition(const ColoredGraph& g, const std::vector<NodeId>& designated = {}) {
  std::vector<NodeId> clique = designated;
  if (clique.empty()) {
    std::vector<NodeId> order(g.size());
    for (NodeId v = 0; v < g.size(); ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return g.neighbors(a).size() > g.neighbors(b).size(); });
    std::size_t m = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
      if (g.neighbors(order[i]).size() >= i) m = i + 1;
    clique.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
  }
  std::vector<char> in_clique(g.size(), 0);
  for (NodeId v : clique) {
    if (v >= g.size()) throw InvalidInstance("clique node out of range");
    in_clique[v] = 1;
  }
  for (std::size_t i = 0; i < clique.size(); ++i)
    for (std::size_t j = i + 1; j < clique.size(); ++j)
      if (clique[i] == clique[j] || !g.adjacent(clique[i], clique[j]))
        throw InvalidInstance("not a split graph: designated clique is not a clique");
  for (auto [u, v] : g.edges())
    if (!in_clique[u] && !in_clique[v])
      throw InvalidInstance("not a split graph: edge inside the independent side");
  std::sort(clique.begin(), clique.end());
  return clique;
}

// Split graphs: full conquest never needs more than two passes over the color
// set (one more call when v0 is on the independent side, to step into the
// clique), so the search is exhaustive up to that depth.
inline SolveResult solve_split_bounded(const ColoredGraph& g, NodeId v0, const std::vector<NodeId>& clique = {},
                                       std::size_t budget = kDefaultBudget) {
  detail::check_start(g, v0);
  const auto t0 = std::chrono::steady_clock::now();
  const auto part = split_partition(g, clique);
  const bool start_in_clique = std::binary_search(part.begin(), part.end(), v0);
  const int cap = 2 * g.k() + (start_in_clique ? 0 : 1);
  SolveResult r;
  r.method = "split";
  auto seq = detail::territory_bfs(g, v0, budget, cap, r.stats, {});
  if (!seq) throw InvalidInstance("split search found no conquest within " + std::to_string(cap) + " calls");
  r.sequence = std::move(*seq);
  finish_result(r, g, v0);
  r.extra["depth_cap"] = cap;
  r.extra["clique_size"] = part.size();
  r.stats.elapsed_ms = detail::ms_since(t0);
  return r;
}

}  // namespace honeybee
