#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "honeybee/graph.hpp"
#include "honeybee/partial_order.hpp"
#include "honeybee/rng.hpp"

namespace hbtest {

using namespace honeybee;

inline std::vector<NodeSpec> plain_nodes(const std::vector<Color>& colors) {
  std::vector<NodeSpec> nodes;
  for (std::size_t i = 0; i < colors.size(); ++i) nodes.push_back({"v" + std::to_string(i), colors[i], 1});
  return nodes;
}

inline ColoredGraph path_graph(int k, const std::vector<Color>& colors) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i + 1 < colors.size(); ++i) edges.emplace_back(i, i + 1);
  return ColoredGraph(k, plain_nodes(colors), edges);
}

inline ColoredGraph make_graph(int k, const std::vector<Color>& colors,
                               const std::vector<std::pair<NodeId, NodeId>>& edges) {
  return ColoredGraph(k, plain_nodes(colors), edges);
}

// Random spanning tree plus extra edges with probability `density`.
inline ColoredGraph random_connected(Rng& rng, int n, int k, double density = 0.3) {
  std::vector<Color> colors(static_cast<std::size_t>(n));
  for (auto& c : colors) c = static_cast<Color>(rng.below(static_cast<std::uint64_t>(k)));
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<std::vector<char>> has(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  for (int v = 1; v < n; ++v) {
    const auto u = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(v)));
    edges.emplace_back(u, static_cast<NodeId>(v));
    has[u][static_cast<std::size_t>(v)] = has[static_cast<std::size_t>(v)][u] = 1;
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!has[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] && rng.chance(density))
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  return make_graph(k, colors, edges);
}

struct OrderedGraph {
  ColoredGraph graph;
  PartialOrder order;
};

// Permutation graph: u < v in the order iff u < v and pi(u) < pi(v); the
// graph joins exactly the incomparable pairs. Redrawn until connected.
inline OrderedGraph random_permutation_graph(Rng& rng, int n, int k) {
  for (;;) {
    std::vector<int> pi(static_cast<std::size_t>(n));
    std::iota(pi.begin(), pi.end(), 0);
    rng.shuffle(pi);
    std::vector<std::pair<NodeId, NodeId>> less, edges;
    for (NodeId u = 0; u < static_cast<NodeId>(n); ++u)
      for (NodeId v = u + 1; v < static_cast<NodeId>(n); ++v) {
        if (pi[u] < pi[v]) less.emplace_back(u, v);
        else edges.emplace_back(u, v);
      }
    std::vector<Color> colors(static_cast<std::size_t>(n));
    for (auto& c : colors) c = static_cast<Color>(rng.below(static_cast<std::uint64_t>(k)));
    ColoredGraph g = make_graph(k, colors, edges);
    if (!is_connected(g)) continue;
    return {std::move(g), PartialOrder::from_pairs(static_cast<std::size_t>(n), less)};
  }
}

// Binary, two 1s with at least one 0 between them.
inline std::string random_scs_sequence(Rng& rng, int n) {
  for (;;) {
    std::string s(static_cast<std::size_t>(n), '0');
    const auto i = rng.below(static_cast<std::uint64_t>(n)), j = rng.below(static_cast<std::uint64_t>(n));
    if (i + 2 > j) continue;
    s[i] = s[j] = '1';
    return s;
  }
}

// Ternary, no repeated neighbours, never starting with 2.
inline std::string random_mscs_sequence(Rng& rng, int len) {
  std::string s;
  while (static_cast<int>(s.size()) < len) {
    const char c = static_cast<char>('0' + rng.below(3));
    if ((s.empty() && c == '2') || (!s.empty() && s.back() == c)) continue;
    s += c;
  }
  return s;
}

}  // namespace hbtest
