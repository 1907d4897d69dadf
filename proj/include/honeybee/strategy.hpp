#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "honeybee/duel.hpp"
#include "honeybee/minimax.hpp"
#include "honeybee/rng.hpp"

namespace honeybee {

enum class Policy { Greedy, Minimax, Random };

inline Policy parse_policy(std::string_view name) {
  if (name == "greedy") return Policy::Greedy;
  if (name == "minimax") return Policy::Minimax;
  if (name == "random") return Policy::Random;
  throw InvalidInstance("unknown policy '" + std::string(name) + "' (greedy, minimax, random)");
}

inline const char* policy_name(Policy p) {
  switch (p) {
    case Policy::Greedy: return "greedy";
    case Policy::Minimax: return "minimax";
    case Policy::Random: return "random";
  }
  return "?";
}

struct MoveChoice {
  Color color = -1;
  std::string note;  // set when the minimax policy had to fall back
};

inline Color greedy_move(const GameState& s) {
  Color best = -1;
  Weight best_gain = -1;
  for (Color c : legal_colors(s)) {
    const Weight w = s.g().weight_of(move_gain(s, c));
    if (w > best_gain) {
      best_gain = w;
      best = c;
    }
  }
  return best;
}

struct StrategyOptions {
  std::uint64_t seed = 0;
  const MinimaxResult* table = nullptr;  // precomputed strategy, if any
  MinimaxOptions search{200'000, std::nullopt, false};
};

// Picks a legal color for the mover. The random policy draws from a stream
// keyed by the seed and the move number, so replays repeat it.
inline MoveChoice strategy_move(const GameState& s, Policy policy, const StrategyOptions& opt = {}) {
  switch (policy) {
    case Policy::Greedy: return {greedy_move(s), ""};
    case Policy::Random: {
      const auto legal = legal_colors(s);
      Rng rng(mix_seed(opt.seed, static_cast<std::uint64_t>(s.moves)));
      return {legal[rng.below(legal.size())], ""};
    }
    case Policy::Minimax: {
      if (opt.table)
        if (auto m = opt.table->lookup(s)) return {*m, ""};
      try {
        auto r = minimax(s, opt.search);
        return {r.best_move, ""};
      } catch (const BudgetExceeded& e) {
        return {greedy_move(s), std::string("minimax gave up (") + e.what() + "); greedy move played"};
      }
    }
  }
  return {greedy_move(s), ""};
}

struct GameRecord {
  std::vector<MoveRecord> moves;
  GameState final_state;
  Verdict verdict;
  std::vector<std::string> notes;
};

inline GameRecord play_out(GameState s, Policy policy_a, Policy policy_b, const StrategyOptions& opt_a,
                           const StrategyOptions& opt_b) {
  GameRecord rec;
  while (!winner(s)) {
    const bool a = s.to_move == Player::A;
    auto choice = strategy_move(s, a ? policy_a : policy_b, a ? opt_a : opt_b);
    if (!choice.note.empty()) rec.notes.push_back(choice.note);
    MoveRecord m;
    s = apply_move(s, choice.color, &m);
    rec.moves.push_back(m);
  }
  rec.verdict = *winner(s);
  rec.final_state = std::move(s);
  return rec;
}

}  // namespace honeybee
