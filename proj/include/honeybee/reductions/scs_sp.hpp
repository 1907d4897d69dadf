#pragma once

#include <string>
#include <vector>

#include "honeybee/duel.hpp"
#include "honeybee/reductions/common.hpp"

namespace honeybee::reductions {

struct ScsSpOptions {
  bool expand_pots = false;  // unit-weight paths instead of weighted nodes
};

// Two-player board on a series-parallel graph. A runs down the paths P_i
// (odd positions spell sigma_i, even positions color 2) towards the pots H_i;
// B races along the paths Q_i with their color-1 twins and owns H_B.
inline ReductionArtifact gen_scs_sp(const Sequences& seqs, const ScsSpOptions& opt = {}) {
  validate_scs(seqs);
  const long long s = static_cast<long long>(seqs.seqs.size());
  const long long n = static_cast<long long>(seqs.seqs.front().size());
  const long long t = seqs.t;
  const Weight pot_i = 4 * s * t;
  const Weight pot_b = 4 * s * (s - 1) * t + (2 * n - 1) * s;

  Builder b;
  const NodeId a0 = b.add("a0", 2, 1, "start-a");
  const NodeId b0 = b.add("b0", 3, 1, "start-b");
  for (long long i = 1; i <= s; ++i) {
    const auto tag = std::to_string(i);
    const auto& sigma = seqs.seqs[static_cast<std::size_t>(i - 1)];
    const NodeId pot = add_pot(b, "H" + tag, 3, pot_i, "pot:" + tag, opt.expand_pots, PotShape::Path);

    NodeId prev = a0;
    for (long long j = 1; j <= 2 * n - 1; ++j) {
      const Color c = j % 2 ? sigma[static_cast<std::size_t>(j / 2)] - '0' : 2;
      const NodeId v = b.add("P" + tag + "_" + std::to_string(j), c, 1, "P:" + tag);
      b.edge(prev, v);
      prev = v;
    }
    b.edge(prev, pot);

    // Q_i: odd nodes color 0, each with a color-1 twin on the same two
    // neighbours; even nodes color 3
    std::vector<std::vector<NodeId>> layer;
    for (long long j = 1; j <= 2 * t - 1; ++j) {
      const auto name = "Q" + tag + "_" + std::to_string(j);
      if (j % 2) {
        layer.push_back({b.add(name, 0, 1, "Q:" + tag), b.add(name + "t", 1, 1, "Q-twin:" + tag)});
      } else {
        layer.push_back({b.add(name, 3, 1, "Q:" + tag)});
      }
    }
    std::vector<NodeId> before{b0};
    for (const auto& here : layer) {
      for (NodeId u : before)
        for (NodeId v : here) b.edge(u, v);
      before = here;
    }
    for (NodeId u : before) b.edge(u, pot);
  }
  const NodeId hb = add_pot(b, "HB", 2, pot_b, "pot:B", opt.expand_pots, PotShape::Path);
  b.edge(b0, hb);
  const Weight unpadded = b.total_weight();
  b.pad_to_odd(hb, 1);

  ReductionArtifact a;
  a.instance = make_instance(b.graph(4));
  a.instance.start_a = a0;
  a.instance.start_b = b0;
  a.construction = "scs-series-parallel";
  a.relation = "A has a winning strategy iff the sequences have a common supersequence of length t";
  a.roles = b.roles();
  a.meta = {{"n", n},
            {"s", s},
            {"t", t},
            {"pot_i", pot_i},
            {"pot_b", pot_b},
            {"total_unpadded", unpadded},
            {"padded", unpadded != b.total_weight()},
            {"territory_a_at_least", 1 + (2 * n - 1) * s + 4 * s * s * t},
            {"territory_b_at_most", 1 + (3 * t - 1) * s + 4 * s * (s - 1) * t + (2 * n - 1) * s}};
  return a;
}

// A's odd-numbered calls that are 0 or 1 spell the supersequence the game
// induces.
inline std::string scs_sp_supersequence(const std::vector<MoveRecord>& moves) {
  std::string w;
  int own = 0;
  for (const auto& m : moves) {
    if (m.player != Player::A) continue;
    if (++own % 2 == 1 && (m.color == 0 || m.color == 1)) w += static_cast<char>('0' + m.color);
  }
  return w;
}

}  // namespace honeybee::reductions
