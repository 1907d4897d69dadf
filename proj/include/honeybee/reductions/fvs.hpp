#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "honeybee/reductions/common.hpp"
#include "honeybee/reductions/oracles.hpp"

namespace honeybee::reductions {

// Split graph: X plus v0 form a clique with one color per node, and every
// arc (x, y) becomes a pendant on x colored like y. Bound |X| + t.
inline ReductionArtifact gen_fvs_split(const Digraph& d) {
  validate_digraph(d);
  Builder b;
  const NodeId v0 = b.add("v0", 0, 1, "start");
  std::vector<NodeId> clique{v0};
  for (std::size_t i = 0; i < d.nodes.size(); ++i)
    clique.push_back(b.add("x_" + d.nodes[i], static_cast<Color>(i + 1), 1, "clique:" + d.nodes[i]));
  for (std::size_t i = 0; i < clique.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) b.edge(clique[j], clique[i]);
  for (auto [x, y] : d.arcs) {
    const auto& nx = d.nodes[static_cast<std::size_t>(x)];
    const auto& ny = d.nodes[static_cast<std::size_t>(y)];
    const NodeId p = b.add("arc_" + nx + "_" + ny, static_cast<Color>(y + 1), 1, "arc:" + nx + "->" + ny);
    b.edge(clique[static_cast<std::size_t>(x) + 1], p);
  }

  ReductionArtifact a;
  a.instance = make_instance(b.graph(static_cast<int>(d.nodes.size()) + 1));
  a.instance.start = v0;
  a.instance.clique = clique;
  a.bound = static_cast<long long>(d.nodes.size()) + d.t;
  a.construction = "fvs-split";
  a.relation = "a feedback vertex set of size t exists iff the start conquers everything within b calls; "
               "the optimum length is |X| plus the minimum feedback vertex set size";
  a.roles = b.roles();
  a.meta = {{"X", d.nodes.size()}, {"arcs", d.arcs.size()}, {"t", d.t}};
  return a;
}

// Nodes whose color is called at least twice. For a conquering sequence of
// length |X| + t this is a feedback vertex set of size at most t.
inline std::vector<int> fvs_from_sequence(const Digraph& d, const ColorSequence& seq) {
  std::map<Color, int> count;
  for (Color c : seq) ++count[c];
  std::vector<int> out;
  for (std::size_t i = 0; i < d.nodes.size(); ++i)
    if (count[static_cast<Color>(i + 1)] >= 2) out.push_back(static_cast<int>(i));
  return out;
}

inline bool is_feedback_set(const Digraph& d, const std::vector<int>& set) {
  std::uint32_t mask = 0;
  for (int v : set) mask |= 1u << v;
  return is_acyclic(d, mask);
}

}  // namespace honeybee::reductions
