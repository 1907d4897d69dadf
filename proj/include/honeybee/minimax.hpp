#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "honeybee/duel.hpp"
#include "honeybee/error.hpp"

namespace honeybee {

// Everything the future of a game depends on. The stall counter makes the
// successor relation acyclic: every move either grows a territory or
// increments it.
struct GameKey {
  NodeSet wa, wb;
  std::int8_t last_a = -1, last_b = -1;
  std::uint8_t mover = 0;
  std::int16_t stall = 0;

  explicit GameKey(const GameState& s)
      : wa(s.wa),
        wb(s.wb),
        last_a(static_cast<std::int8_t>(s.last_a.value_or(-1))),
        last_b(static_cast<std::int8_t>(s.last_b.value_or(-1))),
        mover(s.to_move == Player::A ? 0 : 1),
        stall(static_cast<std::int16_t>(s.stall)) {}

  friend bool operator==(const GameKey&, const GameKey&) = default;
};

struct GameKeyHash {
  std::size_t operator()(const GameKey& k) const noexcept {
    std::size_t h = k.wa.hash() * 31 + k.wb.hash();
    h ^= (static_cast<std::size_t>(static_cast<std::uint8_t>(k.last_a)) << 1) ^
         (static_cast<std::size_t>(static_cast<std::uint8_t>(k.last_b)) << 9) ^ (std::size_t{k.mover} << 17) ^
         (static_cast<std::size_t>(k.stall) << 19);
    return h * 0x9e3779b97f4a7c15ull;
  }
};

struct MinimaxOptions {
  std::size_t budget = 4'000'000;  // expanded states
  std::optional<std::chrono::steady_clock::time_point> deadline;
  bool reverse_order = false;  // explore legal colors high to low
};

struct MinimaxEntry {
  bool a_wins = false;
  Color best = -1;  // a move achieving the value for the mover
};

using StrategyTable = std::unordered_map<GameKey, MinimaxEntry, GameKeyHash>;

struct MinimaxResult {
  Player winner = Player::A;
  Color best_move = -1;  // -1 when the game is already over
  std::size_t states = 0;
  StrategyTable table;

  std::optional<Color> lookup(const GameState& s) const {
    auto it = table.find(GameKey(s));
    if (it == table.end() || it->second.best < 0) return std::nullopt;
    return it->second.best;
  }
};

namespace detail {

class MinimaxSearch {
 public:
  MinimaxSearch(const MinimaxOptions& opt, StrategyTable& table) : opt_(opt), table_(table) {}

  bool a_wins(const GameState& s) {
    if (auto v = winner(s)) return v->winner == Player::A;
    GameKey key(s);
    if (auto it = table_.find(key); it != table_.end()) return it->second.a_wins;
    // counts states on the stack too, not only finished ones
    if (++expanded_ > opt_.budget)
      throw BudgetExceeded("minimax budget of " + std::to_string(opt_.budget) + " states exceeded", table_.size(),
                           {});
    if (opt_.deadline && (++ticks_ & 1023) == 0 && std::chrono::steady_clock::now() > *opt_.deadline)
      throw BudgetExceeded("minimax deadline passed", table_.size(), {});

    auto legal = legal_colors(s);
    if (opt_.reverse_order) std::reverse(legal.begin(), legal.end());
    const bool mover_is_a = s.to_move == Player::A;
    MinimaxEntry e{!mover_is_a, legal.front()};
    for (Color c : legal) {
      const bool child = a_wins(apply_move(s, c));
      if (child == mover_is_a) {
        e = {child, c};
        break;
      }
    }
    table_.emplace(std::move(key), e);
    return e.a_wins;
  }

 private:
  const MinimaxOptions& opt_;
  StrategyTable& table_;
  std::uint64_t ticks_ = 0;
  std::size_t expanded_ = 0;
};

}  // namespace detail

// Game-theoretic winner under optimal play from `s`, with a best move for
// every state the search visited.
inline MinimaxResult minimax(const GameState& s, const MinimaxOptions& opt = {}) {
  MinimaxResult r;
  detail::MinimaxSearch search(opt, r.table);
  r.winner = search.a_wins(s) ? Player::A : Player::B;
  r.states = r.table.size();
  if (auto m = r.lookup(s)) r.best_move = *m;
  return r;
}

inline MinimaxResult minimax(std::shared_ptr<const ColoredGraph> g, NodeId a0, NodeId b0,
                             const MinimaxOptions& opt = {}) {
  return minimax(new_game(std::move(g), a0, b0), opt);
}

}  // namespace honeybee
