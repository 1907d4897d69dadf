#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "honeybee/error.hpp"
#include "honeybee/graph.hpp"
#include "honeybee/instance_io.hpp"

namespace honeybee::reductions {

// ---- source instances ----

struct Digraph {
  std::vector<std::string> nodes;
  std::vector<std::pair<int, int>> arcs;  // indices into nodes
  int t = 0;
};

// Used for both the binary and the ternary supersequence problems.
struct Sequences {
  std::vector<std::string> seqs;
  int t = 0;
};

struct QbfFormula {
  int vars = 0;                          // 2n, quantified E A E A ...
  std::vector<std::vector<int>> clauses;  // literals: +v / -v, v in 1..vars
};

inline void validate_digraph(const Digraph& d) {
  if (d.nodes.empty()) throw InvalidInstance("digraph has no nodes");
  std::set<std::string> names(d.nodes.begin(), d.nodes.end());
  if (names.size() != d.nodes.size()) throw InvalidInstance("duplicate digraph node");
  std::set<std::pair<int, int>> seen;
  const int n = static_cast<int>(d.nodes.size());
  for (auto [x, y] : d.arcs) {
    if (x < 0 || y < 0 || x >= n || y >= n) throw InvalidInstance("arc endpoint out of range");
    if (x == y) throw InvalidInstance("self-loop on '" + d.nodes[x] + "'");
    if (!seen.insert({x, y}).second) throw InvalidInstance("duplicate arc");
  }
  if (d.t < 0 || d.t >= n) throw InvalidInstance("bound t must satisfy 0 <= t < |X|");
}

// Binary, equal lengths, exactly two 1s with a 0 between them.
inline void validate_scs(const Sequences& b) {
  if (b.seqs.empty()) throw InvalidInstance("no sequences");
  if (b.t < 1) throw InvalidInstance("t must be positive");
  const auto n = b.seqs.front().size();
  for (const auto& s : b.seqs) {
    if (s.size() != n) throw InvalidInstance("sequences differ in length");
    if (s.find_first_not_of("01") != std::string::npos) throw InvalidInstance("sequence '" + s + "' is not binary");
    const auto first = s.find('1'), last = s.rfind('1');
    if (std::count(s.begin(), s.end(), '1') != 2) throw InvalidInstance("sequence '" + s + "' needs exactly two 1s");
    if (last - first < 2) throw InvalidInstance("the 1s of '" + s + "' are not separated by a 0");
  }
}

// Over 0,1,2, no two equal neighbours, never starting with 2.
inline void validate_mscs(const Sequences& m) {
  if (m.seqs.empty()) throw InvalidInstance("no sequences");
  if (m.t < 1) throw InvalidInstance("t must be positive");
  for (const auto& s : m.seqs) {
    if (s.empty()) throw InvalidInstance("empty sequence");
    if (s.find_first_not_of("012") != std::string::npos) throw InvalidInstance("sequence '" + s + "' is not ternary");
    if (s.front() == '2') throw InvalidInstance("sequence '" + s + "' starts with 2");
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw InvalidInstance("sequence '" + s + "' repeats an element");
  }
}

inline void validate_qbf(const QbfFormula& f) {
  if (f.vars < 2 || f.vars % 2) throw InvalidInstance("the prefix needs an even, positive number of variables");
  if (f.clauses.empty()) throw InvalidInstance("formula has no clauses");
  for (const auto& c : f.clauses) {
    if (c.empty()) throw InvalidInstance("empty clause");
    for (int lit : c) {
      if (lit == 0 || lit > f.vars || lit < -f.vars)
        throw InvalidInstance("literal " + std::to_string(lit) + " out of range");
      if (std::find(c.begin(), c.end(), -lit) != c.end())
        throw InvalidInstance("clause contains x" + std::to_string(std::abs(lit)) + " and its negation");
    }
  }
}

// ---- source file parsers ----

namespace detail {

inline std::string label(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ParseError(where, "expected a node label (string or integer)");
}

}  // namespace detail

// {"nodes": [..]?, "arcs": [[x, y], ..], "t": int}
inline Digraph digraph_from_json(const json& root) {
  using namespace honeybee::detail;
  require_object(root, "");
  reject_unknown(root, "", {"nodes", "arcs", "t"});
  Digraph d;
  auto index_of = [&](const std::string& name) {
    auto it = std::find(d.nodes.begin(), d.nodes.end(), name);
    if (it != d.nodes.end()) return static_cast<int>(it - d.nodes.begin());
    d.nodes.push_back(name);
    return static_cast<int>(d.nodes.size() - 1);
  };
  if (root.contains("nodes")) {
    const auto& nodes = as_array(root["nodes"], "/nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto name = reductions::detail::label(nodes[i], "/nodes/" + std::to_string(i));
      if (std::find(d.nodes.begin(), d.nodes.end(), name) != d.nodes.end())
        throw ParseError("/nodes/" + std::to_string(i), "duplicate node");
      d.nodes.push_back(name);
    }
  }
  const bool fixed = root.contains("nodes");
  const auto& arcs = as_array(required(root, "", "arcs"), "/arcs");
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const std::string where = "/arcs/" + std::to_string(i);
    if (!arcs[i].is_array() || arcs[i].size() != 2) throw ParseError(where, "expected [from, to]");
    const auto x = reductions::detail::label(arcs[i][0], where + "/0");
    const auto y = reductions::detail::label(arcs[i][1], where + "/1");
    if (fixed) {
      for (const auto& name : {x, y})
        if (std::find(d.nodes.begin(), d.nodes.end(), name) == d.nodes.end())
          throw ParseError(where, "unknown node '" + name + "'");
    }
    const int ix = index_of(x);
    const int iy = index_of(y);
    d.arcs.emplace_back(ix, iy);
  }
  d.t = static_cast<int>(as_int(required(root, "", "t"), "/t"));
  try {
    validate_digraph(d);
  } catch (const InvalidInstance& e) {
    throw ParseError("/", e.what());
  }
  return d;
}

// {"seqs": ["..", ..], "t": int}; `ternary` selects which invariants apply.
inline Sequences sequences_from_json(const json& root, bool ternary) {
  using namespace honeybee::detail;
  require_object(root, "");
  reject_unknown(root, "", {"seqs", "t"});
  Sequences s;
  const auto& seqs = as_array(required(root, "", "seqs"), "/seqs");
  for (std::size_t i = 0; i < seqs.size(); ++i) s.seqs.push_back(as_string(seqs[i], "/seqs/" + std::to_string(i)));
  s.t = static_cast<int>(as_int(required(root, "", "t"), "/t"));
  try {
    ternary ? validate_mscs(s) : validate_scs(s);
  } catch (const InvalidInstance& e) {
    throw ParseError("/seqs", e.what());
  }
  return s;
}

// {"prefix_quantified_vars": 2n, "clauses": [[lit, ..], ..]}
inline QbfFormula qbf_from_json(const json& root) {
  using namespace honeybee::detail;
  require_object(root, "");
  reject_unknown(root, "", {"prefix_quantified_vars", "clauses"});
  QbfFormula f;
  f.vars = static_cast<int>(as_int(required(root, "", "prefix_quantified_vars"), "/prefix_quantified_vars"));
  const auto& clauses = as_array(required(root, "", "clauses"), "/clauses");
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    const std::string where = "/clauses/" + std::to_string(i);
    std::vector<int> c;
    for (std::size_t j = 0; j < as_array(clauses[i], where).size(); ++j)
      c.push_back(static_cast<int>(as_int(clauses[i][j], where + "/" + std::to_string(j))));
    f.clauses.push_back(std::move(c));
  }
  try {
    validate_qbf(f);
  } catch (const InvalidInstance& e) {
    throw ParseError("/clauses", e.what());
  }
  return f;
}

// ---- generated artifacts ----

struct ReductionArtifact {
  Instance instance;
  std::optional<long long> bound;  // solitaire bound b, when the target is a solitaire question
  std::string construction;
  std::string relation;  // how the source answer maps to the game answer
  json roles = json::object();  // node name -> gadget role
  json meta = json::object();
};

inline json provenance_json(const ReductionArtifact& a) {
  json j;
  j["construction"] = a.construction;
  if (a.bound) j["bound"] = *a.bound;
  j["relation"] = a.relation;
  j["roles"] = a.roles;
  j["meta"] = a.meta;
  return j;
}

inline std::string write_provenance(const ReductionArtifact& a) { return provenance_json(a).dump(2) + "\n"; }

// Collects nodes with their roles; edges are deduplicated.
class Builder {
 public:
  NodeId add(std::string name, Color color, Weight weight, std::string role) {
    roles_[name] = std::move(role);
    nodes_.push_back({std::move(name), color, weight});
    return static_cast<NodeId>(nodes_.size() - 1);
  }

  void edge(NodeId a, NodeId b) { edges_.insert({std::min(a, b), std::max(a, b)}); }

  const NodeSpec& node(NodeId v) const { return nodes_[v]; }
  std::size_t size() const { return nodes_.size(); }

  Weight total_weight() const {
    Weight w = 0;
    for (const auto& n : nodes_) w += n.weight;
    return w;
  }

  // Two-player instances need an odd total. When it is even, one unit
  // pendant goes next to `anchor`.
  void pad_to_odd(NodeId anchor, Color color) {
    if (total_weight() % 2 == 1) return;
    edge(anchor, add("pad", color, 1, "parity-padding"));
  }

  ColoredGraph graph(int k) const { return ColoredGraph(k, nodes_, {edges_.begin(), edges_.end()}); }
  const json& roles() const { return roles_; }

 private:
  std::vector<NodeSpec> nodes_;
  std::set<std::pair<NodeId, NodeId>> edges_;
  json roles_ = json::object();
};

// A pot of weight w: one weighted node, or w unit nodes forming a path or a
// clique. External edges attach to the returned node.
enum class PotShape { Path, Clique };

inline NodeId add_pot(Builder& b, const std::string& name, Color c, Weight w, const std::string& role, bool expand,
                      PotShape shape) {
  if (!expand || w == 1) return b.add(name, c, w, role);
  std::vector<NodeId> ids;
  for (Weight i = 1; i <= w; ++i) ids.push_back(b.add(name + "_" + std::to_string(i), c, 1, role));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (shape == PotShape::Path) {
      if (i) b.edge(ids[i - 1], ids[i]);
    } else {
      for (std::size_t j = 0; j < i; ++j) b.edge(ids[j], ids[i]);
    }
  }
  return ids.front();
}

}  // namespace honeybee::reductions
