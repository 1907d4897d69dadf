#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "honeybee/duel.hpp"
#include "honeybee/reductions/common.hpp"

namespace honeybee::reductions {

// Colors: 0 white, 1 light-gray, 2 dark-gray, 3 black.
//
// Each variable pair x_{2i-1}, x_{2i} owns nine nodes on either pseudo-path,
// scheduled so that both players can advance one node per round without R1
// or R2 ever blocking a path call:
//
//   round   1    2          3  4  5  6          7
//   A       2    {F0,T3}    1  0  2  {F0,T3}    1 (a_i)
//   B       1    {F0,T3}    2  1  {F3,T0}  2 (b_i)  3
//
// B's pair for x_{2i} carries switched colors; A answers it one round later
// and R1 forces A onto the same truth value. After the last pair A calls
// white for a_f and B light-gray for b_f.
struct QbfOptions {
  bool expand_pots = false;  // cliques of unit nodes instead of weighted nodes
};

namespace detail {

using Layer = std::vector<NodeId>;  // one node, or a choice pair

inline void chain(Builder& b, const std::vector<Layer>& layers, std::size_t from = 0) {
  for (std::size_t i = from + 1; i < layers.size(); ++i)
    for (NodeId u : layers[i - 1])
      for (NodeId v : layers[i]) b.edge(u, v);
}

}  // namespace detail

inline ReductionArtifact gen_qbf(const QbfFormula& f, const QbfOptions& opt = {}) {
  using detail::Layer;
  validate_qbf(f);
  const int n = f.vars / 2;
  const Weight clause_pot = 2LL * n * n;
  const Weight big_pot = 2LL * n * n * n;
  constexpr Color W = 0, L = 1, D = 2, K = 3;

  Builder b;
  json choices = json::object();
  std::vector<Layer> pa{{b.add("a0", L, 1, "path-A")}};
  std::vector<Layer> pb{{b.add("b0", D, 1, "path-B")}};
  std::vector<std::size_t> star(static_cast<std::size_t>(f.vars) + 1);  // layer index of a*_k on P_A
  std::vector<NodeId> b_after_u(static_cast<std::size_t>(n) + 1);

  auto single = [&](std::vector<Layer>& path, const std::string& name, Color c, const char* role) {
    path.push_back({b.add(name, c, 1, role)});
    return path.back().front();
  };
  auto pair = [&](std::vector<Layer>& path, const std::string& stem, Color cf, Color ct, const char* role) {
    const NodeId fn = b.add(stem + "F", cf, 1, role);
    const NodeId tn = b.add(stem + "T", ct, 1, role);
    path.push_back({fn, tn});
    return std::array<NodeId, 2>{fn, tn};
  };
  // [F, T] choice nodes per variable, on either path
  std::vector<std::array<NodeId, 2>> a_pair(static_cast<std::size_t>(f.vars) + 1), b_pair(a_pair);

  for (int i = 1; i <= n; ++i) {
    const auto gi = std::to_string(i);
    const auto ke = std::to_string(2 * i - 1), ku = std::to_string(2 * i);
    single(pa, "A" + gi + "_g", D, "path-A");
    a_pair[static_cast<std::size_t>(2 * i - 1)] = pair(pa, "a" + ke, W, K, "path-A");
    star[static_cast<std::size_t>(2 * i - 1)] = pa.size();
    single(pa, "A" + gi + "_s1", L, "path-A");
    single(pa, "A" + gi + "_s2", W, "path-A");
    single(pa, "A" + gi + "_s3", D, "path-A");
    a_pair[static_cast<std::size_t>(2 * i)] = pair(pa, "a" + ku, W, K, "path-A");
    star[static_cast<std::size_t>(2 * i)] = pa.size();
    single(pa, "a" + gi, L, "path-A");

    single(pb, "B" + gi + "_1", L, "path-B");
    b_pair[static_cast<std::size_t>(2 * i - 1)] = pair(pb, "b" + ke, W, K, "path-B");
    single(pb, "B" + gi + "_3", D, "path-B");
    single(pb, "B" + gi + "_4", L, "path-B");
    b_pair[static_cast<std::size_t>(2 * i)] = pair(pb, "b" + ku, K, W, "path-B");
    b_after_u[static_cast<std::size_t>(i)] = single(pb, "b" + gi, D, "path-B");
    single(pb, "B" + gi + "_7", K, "path-B");

    for (int k : {2 * i - 1, 2 * i}) {
      const auto& ap = a_pair[static_cast<std::size_t>(k)];
      const auto& bp = b_pair[static_cast<std::size_t>(k)];
      choices[std::to_string(k)] = {{"aF", b.node(ap[0]).name},
                                    {"aT", b.node(ap[1]).name},
                                    {"bF", b.node(bp[0]).name},
                                    {"bT", b.node(bp[1]).name},
                                    {"quantifier", k % 2 ? "exists" : "forall"}};
    }
  }
  detail::chain(b, pa);
  detail::chain(b, pb);

  const NodeId af = b.add("af", W, 1, "a_f");
  const NodeId bf = b.add("bf", L, 1, "b_f");
  b.edge(pa.back().front(), af);
  b.edge(pb.back().front(), bf);
  const NodeId ha = add_pot(b, "HA", K, big_pot, "pot-A", opt.expand_pots, PotShape::Clique);
  const NodeId hb = add_pot(b, "HB", W, big_pot, "pot-B", opt.expand_pots, PotShape::Clique);
  b.edge(af, ha);
  b.edge(bf, hb);
  b.edge(ha, hb);

  // waiting gadgets: copies of P_A from a*_k to a_n
  json waits = json::object();
  std::vector<std::array<NodeId, 2>> w_end(static_cast<std::size_t>(f.vars) + 1);  // [F, T] copies of a_n
  for (int k = 1; k <= f.vars; ++k) {
    const auto ks = std::to_string(k);
    const int i = (k + 1) / 2;
    for (int side = 0; side < 2; ++side) {
      const std::string tag = ks + (side ? "T" : "F");
      std::vector<Layer> copy;
      for (std::size_t l = star[static_cast<std::size_t>(k)]; l < pa.size(); ++l) {
        Layer layer;
        for (NodeId v : pa[l])
          layer.push_back(b.add("W" + tag + "_" + b.node(v).name, b.node(v).color, 1, "wait:" + tag));
        copy.push_back(std::move(layer));
      }
      detail::chain(b, copy);
      const NodeId entry = copy.front().front();
      b.edge(a_pair[static_cast<std::size_t>(k)][static_cast<std::size_t>(side)], entry);
      // B touches the unchosen side only after A's answer: through its own
      // pair node for x_{2i-1}, through b_i for x_{2i}. B reaches the node
      // after its first pair in slot 3 and calls light-gray in slot 4, so
      // wiring that node to a universal entry would hand B the entry early.
      if (k % 2) {
        b.edge(b_pair[static_cast<std::size_t>(k)][static_cast<std::size_t>(side)], entry);
      } else {
        b.edge(b_after_u[static_cast<std::size_t>(i)], entry);
      }
      std::size_t nodes = 0;
      for (const auto& layer : copy) nodes += layer.size();
      waits[tag] = {{"entry", b.node(entry).name}, {"exit", b.node(copy.back().front()).name}, {"nodes", nodes}};
      w_end[static_cast<std::size_t>(k)][static_cast<std::size_t>(side)] = copy.back().front();
    }
  }

  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    const NodeId pot =
        add_pot(b, "C" + std::to_string(j + 1), W, clause_pot, "clause:" + std::to_string(j + 1), opt.expand_pots,
                PotShape::Clique);
    b.edge(bf, pot);
    for (int lit : f.clauses[j]) b.edge(w_end[static_cast<std::size_t>(std::abs(lit))][lit > 0 ? 1 : 0], pot);
  }
  const Weight unpadded = b.total_weight();
  b.pad_to_odd(hb, D);

  std::size_t path_a = 0, path_b = 0;
  for (const auto& l : pa) path_a += l.size();
  for (const auto& l : pb) path_b += l.size();

  ReductionArtifact a;
  a.instance = make_instance(b.graph(4));
  a.instance.start_a = 0;
  a.instance.start_b = 1;
  a.construction = "qbf";
  a.relation = "A has a winning strategy iff the quantified formula is true";
  a.roles = b.roles();
  a.meta = {{"n", n},
            {"variables", f.vars},
            {"clauses", f.clauses.size()},
            {"clause_pot", clause_pot},
            {"big_pot", big_pot},
            {"pseudo_path_a", path_a},
            {"pseudo_path_b", path_b},
            {"choices", choices},
            {"waiting", waits},
            {"total_unpadded", unpadded},
            {"padded", unpadded != b.total_weight()}};
  return a;
}

// Truth values read off a game: x_k takes the value of whichever of a_k^F,
// a_k^T A conquers first. The other node stays free next to A's territory
// and usually falls to A later, so the final territory alone cannot tell.
inline std::vector<std::optional<bool>> qbf_assignment(const ReductionArtifact& a,
                                                       const std::vector<MoveRecord>& moves) {
  auto g = std::make_shared<const ColoredGraph>(a.instance.graph);
  const int vars = a.meta.at("variables").get<int>();
  std::vector<std::array<NodeId, 2>> pairs;
  for (int k = 1; k <= vars; ++k) {
    const auto& ch = a.meta.at("choices").at(std::to_string(k));
    pairs.push_back({g->id(ch.at("aF").get<std::string>()), g->id(ch.at("aT").get<std::string>())});
  }
  std::vector<std::optional<bool>> out(static_cast<std::size_t>(vars));
  GameState s = new_game(g, *a.instance.start_a, *a.instance.start_b);
  for (const auto& m : moves) {
    s = apply_move(s, m.color);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (out[k]) continue;
      const bool f = s.wa.contains(pairs[k][0]), t = s.wa.contains(pairs[k][1]);
      if (f != t) out[k] = t;
    }
  }
  return out;
}

}  // namespace honeybee::reductions
