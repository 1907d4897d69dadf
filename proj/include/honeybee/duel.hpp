#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "honeybee/error.hpp"
#include "honeybee/graph.hpp"
#include "honeybee/instance_io.hpp"
#include "honeybee/rng.hpp"

namespace honeybee {

enum class Player { A, B };

inline Player other(Player p) { return p == Player::A ? Player::B : Player::A; }
inline const char* player_name(Player p) { return p == Player::A ? "A" : "B"; }

// Immutable snapshot of a two-player game. Copies share the graph.
struct GameState {
  std::shared_ptr<const ColoredGraph> graph;
  NodeSet wa, wb;
  std::optional<Color> last_a, last_b;
  Player to_move = Player::A;
  int moves = 0;      // moves played so far, both players
  int stall = 0;      // consecutive non-gaining moves
  int stall_cap = 0;  // adjudicate once stall reaches this

  const ColoredGraph& g() const { return *graph; }
  const NodeSet& own() const { return to_move == Player::A ? wa : wb; }
  const NodeSet& opponent() const { return to_move == Player::A ? wb : wa; }
  std::optional<Color> own_last() const { return to_move == Player::A ? last_a : last_b; }
  std::optional<Color> opponent_last() const { return to_move == Player::A ? last_b : last_a; }
  // Round of the next move: A and B share a round, A moving first.
  int round() const { return moves / 2 + 1; }
};

// Default stall cap: two full passes over the colors without a gain.
inline int default_stall_cap(const ColoredGraph& g) { return 2 * g.k(); }

inline GameState new_game(std::shared_ptr<const ColoredGraph> g, NodeId a0, NodeId b0, int stall_cap = 0) {
  if (!g) throw InvalidInstance("no graph");
  if (a0 >= g->size() || b0 >= g->size()) throw InvalidInstance("start node out of range");
  if (a0 == b0) throw InvalidInstance("start nodes must differ");
  if (g->k() < 3) throw InvalidInstance("two-player games need at least 3 colors");
  if (g->total_weight() % 2 == 0) throw InvalidInstance("total weight must be odd");
  if (!is_connected(*g)) throw InvalidInstance("graph is disconnected");
  GameState s;
  s.wa = g->singleton(a0);
  s.wb = g->singleton(b0);
  s.stall_cap = stall_cap > 0 ? stall_cap : default_stall_cap(*g);
  s.graph = std::move(g);
  return s;
}

inline GameState new_game(const Instance& inst, int stall_cap = 0) {
  if (!inst.start_a || !inst.start_b) throw InvalidInstance("instance needs start_a and start_b");
  return new_game(std::make_shared<const ColoredGraph>(inst.graph), *inst.start_a, *inst.start_b, stall_cap);
}

// What the mover would add by calling c. The opponent's territory is
// neither taken nor crossed: in play it carries the opponent's last color,
// which R1 bars anyway.
inline NodeSet move_gain(const GameState& s, Color c) { return gained_by(s.g(), s.own(), c, &s.opponent()); }

struct Verdict {
  Player winner = Player::A;
  std::string reason;  // "majority" or "stall-adjudication"
  Weight weight_a = 0;
  Weight weight_b = 0;
};

// Majority of total weight ends the game. Reaching the stall cap ends it by
// comparing territory weights (not a rule of the game; ties go to B).
inline std::optional<Verdict> winner(const GameState& s) {
  const auto& g = s.g();
  const Weight a = g.weight_of(s.wa), b = g.weight_of(s.wb);
  const Weight total = g.total_weight();
  if (2 * a > total) return Verdict{Player::A, "majority", a, b};
  if (2 * b > total) return Verdict{Player::B, "majority", a, b};
  if (s.stall >= s.stall_cap) return Verdict{a > b ? Player::A : Player::B, "stall-adjudication", a, b};
  return std::nullopt;
}

// Colors allowed by R1 and R2.
inline std::vector<Color> unbarred_colors(const GameState& s) {
  std::vector<Color> out;
  for (Color c = 0; c < s.g().k(); ++c)
    if (c != s.own_last() && c != s.opponent_last()) out.push_back(c);
  return out;
}

// R3: gaining colors when there are any, otherwise every unbarred color.
inline std::vector<Color> legal_colors(const GameState& s) {
  if (winner(s)) throw RuleViolation(Rule::GameOver, "the game is over");
  auto free = unbarred_colors(s);
  if (free.empty()) throw RuleViolation(Rule::NoLegalColor, "rules R1 and R2 bar every color");
  std::vector<Color> gaining;
  for (Color c : free)
    if (!move_gain(s, c).empty()) gaining.push_back(c);
  return gaining.empty() ? free : gaining;
}

// Names the rule a call would break, if any.
inline std::optional<Rule> violated_rule(const GameState& s, Color c) {
  if (winner(s)) return Rule::GameOver;
  if (c < 0 || c >= s.g().k()) return Rule::BadColor;
  if (c == s.opponent_last()) return Rule::R1;
  if (c == s.own_last()) return Rule::R2;
  if (move_gain(s, c).empty()) {
    for (Color d : unbarred_colors(s))
      if (!move_gain(s, d).empty()) return Rule::R3;
  }
  return std::nullopt;
}

inline std::string rule_message(Rule r, Color c) {
  const std::string col = std::to_string(c);
  switch (r) {
    case Rule::R1: return "color " + col + " was just called by the opponent";
    case Rule::R2: return "color " + col + " was your previous call";
    case Rule::R3: return "color " + col + " gains nothing while a gaining color is allowed";
    case Rule::GameOver: return "the game is over";
    case Rule::BadColor: return "color " + col + " does not exist";
    case Rule::NoLegalColor: return "no color is allowed";
  }
  return "illegal move";
}

struct MoveRecord {
  int round = 0;
  Player player = Player::A;
  Color color = 0;
  Weight gained = 0;
};

// Applies a legal call and returns the successor; `record` receives the
// transcript line when given.
inline GameState apply_move(const GameState& s, Color c, MoveRecord* record = nullptr) {
  if (auto r = violated_rule(s, c)) throw RuleViolation(*r, rule_message(*r, c));
  GameState t = s;
  const NodeSet gain = move_gain(s, c);
  const Weight gw = s.g().weight_of(gain);
  if (record) *record = MoveRecord{s.round(), s.to_move, c, gw};
  if (s.to_move == Player::A) {
    t.wa |= gain;
    t.last_a = c;
  } else {
    t.wb |= gain;
    t.last_b = c;
  }
  t.stall = gain.empty() ? s.stall + 1 : 0;
  t.to_move = other(s.to_move);
  ++t.moves;
  return t;
}

// ---- transcripts ----

inline json move_to_json(const MoveRecord& m) {
  return json{{"round", m.round}, {"player", player_name(m.player)}, {"color", m.color}, {"gained", m.gained}};
}

inline MoveRecord move_from_json(const json& j, const std::string& where = "") {
  using namespace detail;
  require_object(j, where);
  reject_unknown(j, where, {"round", "player", "color", "gained"});
  MoveRecord m;
  m.round = static_cast<int>(as_int(required(j, where, "round"), where + "/round"));
  const auto p = as_string(required(j, where, "player"), where + "/player");
  if (p != "A" && p != "B") throw ParseError(where + "/player", "player must be A or B");
  m.player = p == "A" ? Player::A : Player::B;
  m.color = static_cast<Color>(as_int(required(j, where, "color"), where + "/color"));
  m.gained = as_int(required(j, where, "gained"), where + "/gained");
  return m;
}

inline std::string transcript_to_jsonl(const std::vector<MoveRecord>& moves) {
  std::string out;
  for (const auto& m : moves) out += move_to_json(m).dump() + "\n";
  return out;
}

inline std::vector<MoveRecord> transcript_from_jsonl(std::string_view text) {
  std::vector<MoveRecord> out;
  std::size_t line = 0, pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto row = text.substr(pos, end - pos);
    ++line;
    pos = end + 1;
    if (row.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    json j;
    try {
      j = json::parse(row);
    } catch (const json::parse_error&) {
      throw ParseError("line " + std::to_string(line), "malformed JSON");
    }
    out.push_back(move_from_json(j, "line " + std::to_string(line)));
  }
  return out;
}

// Replays a transcript from the opening position, checking every recorded
// field against the engine.
inline GameState replay(GameState s, const std::vector<MoveRecord>& moves) {
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const auto& m = moves[i];
    MoveRecord got;
    s = apply_move(s, m.color, &got);
    if (got.player != m.player || got.round != m.round || got.gained != m.gained)
      throw ParseError("move " + std::to_string(i + 1), "transcript disagrees with the engine");
  }
  return s;
}

inline json verdict_to_json(const Verdict& v) {
  return json{{"winner", player_name(v.winner)}, {"reason", v.reason}, {"weight_a", v.weight_a},
              {"weight_b", v.weight_b}};
}

inline json state_to_json(const GameState& s) {
  const auto& g = s.g();
  auto names = [&](const NodeSet& w) {
    json arr = json::array();
    w.for_each([&](NodeId v) { arr.push_back(g.name(v)); });
    return arr;
  };
  json j;
  j["territory_a"] = names(s.wa);
  j["territory_b"] = names(s.wb);
  j["last_a"] = s.last_a ? json(*s.last_a) : json(nullptr);
  j["last_b"] = s.last_b ? json(*s.last_b) : json(nullptr);
  j["to_move"] = player_name(s.to_move);
  j["round"] = s.round();
  j["moves"] = s.moves;
  j["stall"] = s.stall;
  j["score_a"] = g.weight_of(s.wa);
  j["score_b"] = g.weight_of(s.wb);
  j["total_weight"] = g.total_weight();
  if (auto v = winner(s)) {
    j["verdict"] = verdict_to_json(*v);
    j["legal_colors"] = json::array();
  } else {
    j["verdict"] = nullptr;
    j["legal_colors"] = legal_colors(s);
  }
  return j;
}

}  // namespace honeybee
