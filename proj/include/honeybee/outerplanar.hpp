#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "honeybee/duel.hpp"
#include "honeybee/error.hpp"

namespace honeybee {

// The outer face walk split at the two start nodes: `upper` runs from a0's
// neighbour towards b0, `lower` likewise on the other side. Index i (1-based)
// on a chain is u_i or l_i.
struct OuterChains {
  std::vector<NodeId> upper, lower;
};

// The walk must be closed (last node adjacent to the first), step along
// edges, and visit every node.
inline void validate_outer_walk(const ColoredGraph& g, const std::vector<NodeId>& walk) {
  if (walk.empty()) throw InvalidInstance("outer face walk is empty");
  if (g.size() == 1) return;
  std::vector<char> seen(g.size(), 0);
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const NodeId u = walk[i], v = walk[(i + 1) % walk.size()];
    if (u >= g.size()) throw InvalidInstance("outer face walk names an unknown node");
    if (!g.adjacent(u, v))
      throw InvalidInstance("outer face walk is not closed along edges at '" + g.name(u) + "'");
    seen[u] = 1;
  }
  for (NodeId v = 0; v < g.size(); ++v)
    if (!seen[v]) throw InvalidInstance("outer face walk misses node '" + g.name(v) + "'");
}

inline OuterChains outer_chains(const std::vector<NodeId>& walk, NodeId a0, NodeId b0) {
  auto ia = std::find(walk.begin(), walk.end(), a0);
  if (ia == walk.end()) throw InvalidInstance("start_a is not on the outer face");
  std::vector<NodeId> w(ia, walk.end());
  w.insert(w.end(), walk.begin(), ia);
  auto ib = std::find(w.begin(), w.end(), b0);
  if (ib == w.end()) throw InvalidInstance("start_b is not on the outer face");
  OuterChains ch;
  ch.upper.assign(w.begin() + 1, ib);
  ch.lower.assign(ib + 1, w.end());
  std::reverse(ch.lower.begin(), ch.lower.end());
  return ch;
}

enum class OuterplanarVariant {
  Exact,   // spans plus the free pockets inside them
  Coarse,  // spans only; enclosed free nodes credited to the enclosing player
};

struct OuterplanarResult {
  Player winner = Player::A;
  std::size_t states = 0;
};

namespace detail {

struct Span {
  std::uint8_t u = 0, l = 0;
};

struct OuterKey {
  Span a, b;
  NodeSet pocket_a, pocket_b;
  std::int8_t last_a = -1, last_b = -1;
  std::uint8_t mover = 0;
  std::int16_t stall = 0;
  friend bool operator==(const OuterKey& x, const OuterKey& y) {
    return x.a.u == y.a.u && x.a.l == y.a.l && x.b.u == y.b.u && x.b.l == y.b.l && x.pocket_a == y.pocket_a &&
           x.pocket_b == y.pocket_b && x.last_a == y.last_a && x.last_b == y.last_b && x.mover == y.mover &&
           x.stall == y.stall;
  }
};

struct OuterKeyHash {
  std::size_t operator()(const OuterKey& k) const noexcept {
    std::size_t h = (std::size_t{k.a.u} << 24) ^ (std::size_t{k.a.l} << 16) ^ (std::size_t{k.b.u} << 8) ^ k.b.l;
    h = h * 1000003 ^ k.pocket_a.hash();
    h = h * 1000003 ^ k.pocket_b.hash();
    h ^= (static_cast<std::size_t>(static_cast<std::uint8_t>(k.last_a)) << 32) ^
         (static_cast<std::size_t>(static_cast<std::uint8_t>(k.last_b)) << 40) ^ (std::size_t{k.mover} << 48) ^
         (static_cast<std::size_t>(k.stall) << 50);
    return h * 0x9e3779b97f4a7c15ull;
  }
};

class OuterSearch {
 public:
  OuterSearch(const ColoredGraph& g, OuterChains ch, NodeId a0, NodeId b0, OuterplanarVariant variant,
              std::size_t budget)
      : g_(g), ch_(std::move(ch)), a0_(a0), b0_(b0), variant_(variant), budget_(budget) {}

  // A's reach along each chain: the furthest index it holds.
  Span span_a(const NodeSet& w) const {
    Span s;
    for (std::size_t i = 0; i < ch_.upper.size(); ++i)
      if (w.contains(ch_.upper[i])) s.u = static_cast<std::uint8_t>(i + 1);
    for (std::size_t i = 0; i < ch_.lower.size(); ++i)
      if (w.contains(ch_.lower[i])) s.l = static_cast<std::uint8_t>(i + 1);
    return s;
  }
  // B's reach: the nearest index to a0 it holds (chain length + 1 if none).
  Span span_b(const NodeSet& w) const {
    Span s{static_cast<std::uint8_t>(ch_.upper.size() + 1), static_cast<std::uint8_t>(ch_.lower.size() + 1)};
    for (std::size_t i = ch_.upper.size(); i-- > 0;)
      if (w.contains(ch_.upper[i])) s.u = static_cast<std::uint8_t>(i + 1);
    for (std::size_t i = ch_.lower.size(); i-- > 0;)
      if (w.contains(ch_.lower[i])) s.l = static_cast<std::uint8_t>(i + 1);
    return s;
  }
  NodeSet region_a(Span s) const {
    NodeSet r = g_.singleton(a0_);
    for (std::size_t i = 0; i < s.u; ++i) r.insert(ch_.upper[i]);
    for (std::size_t i = 0; i < s.l; ++i) r.insert(ch_.lower[i]);
    return r;
  }
  NodeSet region_b(Span s) const {
    NodeSet r = g_.singleton(b0_);
    for (std::size_t i = s.u; i <= ch_.upper.size(); ++i) r.insert(ch_.upper[i - 1]);
    for (std::size_t i = s.l; i <= ch_.lower.size(); ++i) r.insert(ch_.lower[i - 1]);
    return r;
  }

  // Replaces territories by the enclosed regions in the coarse variant.
  void normalize(GameState& s) const {
    if (variant_ != OuterplanarVariant::Coarse) return;
    s.wa = region_a(span_a(s.wa));
    s.wb = region_b(span_b(s.wb));
    if (s.wa.intersects(s.wb)) throw InvalidInstance("credited regions overlap; coarse state is undefined here");
  }

  OuterKey key(const GameState& s) const {
    OuterKey k;
    k.a = span_a(s.wa);
    k.b = span_b(s.wb);
    if (variant_ == OuterplanarVariant::Exact) {
      k.pocket_a = region_a(k.a) - s.wa;
      k.pocket_b = region_b(k.b) - s.wb;
    }
    k.last_a = static_cast<std::int8_t>(s.last_a.value_or(-1));
    k.last_b = static_cast<std::int8_t>(s.last_b.value_or(-1));
    k.mover = s.to_move == Player::A ? 0 : 1;
    k.stall = static_cast<std::int16_t>(s.stall);
    return k;
  }

  bool a_wins(const GameState& s) {
    if (auto v = winner(s)) return v->winner == Player::A;
    OuterKey k = key(s);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    if (memo_.size() >= budget_)
      throw BudgetExceeded("outerplanar budget of " + std::to_string(budget_) + " states exceeded", memo_.size(),
                           {});
    const bool mover_is_a = s.to_move == Player::A;
    bool value = !mover_is_a;
    for (Color c : legal_colors(s)) {
      GameState t = apply_move(s, c);
      normalize(t);
      if (a_wins(t) == mover_is_a) {
        value = mover_is_a;
        break;
      }
    }
    memo_.emplace(std::move(k), value);
    return value;
  }

  std::size_t states() const { return memo_.size(); }

 private:
  const ColoredGraph& g_;
  OuterChains ch_;
  NodeId a0_, b0_;
  OuterplanarVariant variant_;
  std::size_t budget_;
  std::unordered_map<OuterKey, bool, OuterKeyHash> memo_;
};

}  // namespace detail

// Backward induction over span states: each player's territory is described
// by how far it reaches along the upper and lower chain. Without chords
// crossing into the other player's span this is all a territory can look
// like, up to free nodes left inside its span. The exact variant keeps those
// pockets in the state, because they decide whether a call gains and so
// which calls R3 allows. The coarse variant drops them and credits pockets
// to the enclosing player immediately.
inline OuterplanarResult outerplanar_solve(std::shared_ptr<const ColoredGraph> g, const std::vector<NodeId>& walk,
                                           NodeId a0, NodeId b0,
                                           OuterplanarVariant variant = OuterplanarVariant::Exact,
                                           std::size_t budget = 4'000'000) {
  validate_outer_walk(*g, walk);
  if (walk.size() > 250) throw SizeGuardExceeded("outer face walk too long");
  GameState s = new_game(g, a0, b0);
  detail::OuterSearch search(*g, outer_chains(walk, a0, b0), a0, b0, variant, budget);
  search.normalize(s);
  OuterplanarResult r;
  r.winner = search.a_wins(s) ? Player::A : Player::B;
  r.states = search.states();
  return r;
}

}  // namespace honeybee
