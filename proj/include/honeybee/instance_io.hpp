#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <numeric>
#include <set>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "honeybee/error.hpp"
#include "honeybee/graph.hpp"

namespace honeybee {

using json = nlohmann::json;

namespace detail {

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "malformed JSON");
  }
}

inline void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where.empty() ? "/" : where, "expected an object");
}

inline void reject_unknown(const json& j, const std::string& where, std::initializer_list<std::string_view> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw ParseError(where + "/" + it.key(), "unknown field");
  }
}

inline const json& required(const json& j, const std::string& where, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + "/" + key, "missing required field");
  return *it;
}

inline long long as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where, "expected an integer");
  return j.get<long long>();
}

inline std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where, "expected a string");
  return j.get<std::string>();
}

inline const json& as_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array");
  return j;
}

inline NodeId resolve(const ColoredGraph& g, const json& j, const std::string& where) {
  const auto name = as_string(j, where);
  auto v = g.find(name);
  if (!v) throw ParseError(where, "unknown node id '" + name + "'");
  return *v;
}

}  // namespace detail

// Parses and validates an instance file. Node ids become dense integers in
// file order; names are kept on the graph.
inline Instance instance_from_json(const json& root) {
  using namespace detail;
  require_object(root, "");
  reject_unknown(root, "", {"k", "nodes", "edges", "start", "start_a", "start_b", "clique", "outer_face"});

  const auto k = as_int(required(root, "", "k"), "/k");
  if (k < 1 || k > 1'000'000) throw ParseError("/k", "k must be a positive integer");

  std::vector<NodeSpec> nodes;
  std::unordered_map<std::string, NodeId> index;
  const auto& jnodes = as_array(required(root, "", "nodes"), "/nodes");
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    const std::string where = "/nodes/" + std::to_string(i);
    const auto& jn = jnodes[i];
    require_object(jn, where);
    reject_unknown(jn, where, {"id", "color", "weight"});
    NodeSpec spec;
    spec.name = as_string(required(jn, where, "id"), where + "/id");
    const auto color = as_int(required(jn, where, "color"), where + "/color");
    if (color < 0 || color >= k)
      throw ParseError(where + "/color", "color " + std::to_string(color) + " not in 0.." + std::to_string(k - 1));
    spec.color = static_cast<Color>(color);
    if (auto it = jn.find("weight"); it != jn.end()) {
      const auto w = as_int(*it, where + "/weight");
      if (w < 1) throw ParseError(where + "/weight", "weight must be positive");
      spec.weight = w;
    }
    if (!index.emplace(spec.name, static_cast<NodeId>(nodes.size())).second)
      throw ParseError(where + "/id", "duplicate node id '" + spec.name + "'");
    nodes.push_back(std::move(spec));
  }
  if (nodes.empty()) throw ParseError("/nodes", "instance has no nodes");

  std::vector<std::pair<NodeId, NodeId>> edges;
  const auto& jedges = as_array(required(root, "", "edges"), "/edges");
  std::set<std::pair<NodeId, NodeId>> seen;
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    const std::string where = "/edges/" + std::to_string(i);
    const auto& je = jedges[i];
    if (!je.is_array() || je.size() != 2) throw ParseError(where, "edge must be a pair of node ids");
    NodeId ends[2];
    for (int s = 0; s < 2; ++s) {
      const auto name = as_string(je[s], where + "/" + std::to_string(s));
      auto it = index.find(name);
      if (it == index.end()) throw ParseError(where + "/" + std::to_string(s), "unknown node id '" + name + "'");
      ends[s] = it->second;
    }
    if (ends[0] == ends[1]) throw ParseError(where, "self-loop");
    auto key = std::minmax(ends[0], ends[1]);
    if (!seen.emplace(key).second) throw ParseError(where, "duplicate edge");
    edges.emplace_back(ends[0], ends[1]);
  }

  Instance inst{ColoredGraph(static_cast<int>(k), std::move(nodes), edges), {}, {}, {}, {}, {}};
  if (!is_connected(inst.graph)) throw ParseError("/edges", "graph is disconnected");

  for (const char* key : {"start", "start_a", "start_b"}) {
    auto it = root.find(key);
    if (it == root.end()) continue;
    const NodeId v = resolve(inst.graph, *it, std::string("/") + key);
    if (std::string_view(key) == "start") inst.start = v;
    else if (std::string_view(key) == "start_a") inst.start_a = v;
    else inst.start_b = v;
  }
  if (inst.start_a && inst.start_b && *inst.start_a == *inst.start_b)
    throw ParseError("/start_b", "start_a and start_b must differ");

  for (const char* key : {"clique", "outer_face"}) {
    auto it = root.find(key);
    if (it == root.end()) continue;
    const std::string where = std::string("/") + key;
    const auto& arr = as_array(*it, where);
    std::vector<NodeId> ids;
    for (std::size_t i = 0; i < arr.size(); ++i)
      ids.push_back(resolve(inst.graph, arr[i], where + "/" + std::to_string(i)));
    if (std::string_view(key) == "clique") inst.clique = std::move(ids);
    else inst.outer_face = std::move(ids);
  }
  return inst;
}

inline Instance load_instance(std::string_view text) { return instance_from_json(detail::parse_json(text)); }

inline ColoredGraph load_graph(std::string_view text) { return load_instance(text).graph; }

// Canonical form: nodes sorted by id, each edge as a sorted id pair, edge list
// sorted. Weight is written only when it differs from 1.
inline json instance_to_json(const Instance& inst) {
  const auto& g = inst.graph;
  std::vector<NodeId> order(g.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return g.name(a) < g.name(b); });

  json root;
  root["k"] = g.k();
  json nodes = json::array();
  for (NodeId v : order) {
    json n;
    n["id"] = g.name(v);
    n["color"] = g.color(v);
    if (g.weight(v) != 1) n["weight"] = g.weight(v);
    nodes.push_back(std::move(n));
  }
  root["nodes"] = std::move(nodes);

  std::vector<std::pair<std::string, std::string>> edges;
  for (auto [u, v] : g.edges()) {
    auto a = g.name(u), b = g.name(v);
    if (b < a) std::swap(a, b);
    edges.emplace_back(std::move(a), std::move(b));
  }
  std::sort(edges.begin(), edges.end());
  json jedges = json::array();
  for (auto& [a, b] : edges) jedges.push_back(json::array({a, b}));
  root["edges"] = std::move(jedges);

  if (inst.start) root["start"] = g.name(*inst.start);
  if (inst.start_a) root["start_a"] = g.name(*inst.start_a);
  if (inst.start_b) root["start_b"] = g.name(*inst.start_b);
  if (!inst.clique.empty()) {
    std::vector<std::string> names;
    for (NodeId v : inst.clique) names.push_back(g.name(v));
    std::sort(names.begin(), names.end());
    root["clique"] = names;
  }
  if (!inst.outer_face.empty()) {
    json walk = json::array();
    for (NodeId v : inst.outer_face) walk.push_back(g.name(v));
    root["outer_face"] = std::move(walk);
  }
  return root;
}

inline std::string write_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

inline Instance make_instance(ColoredGraph g) { return Instance{std::move(g), {}, {}, {}, {}, {}}; }

}  // namespace honeybee
