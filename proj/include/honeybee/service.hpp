#pragma once

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <semaphore>
#include <shared_mutex>
#include <string>
#include <vector>

#include <httplib.h>

#include "honeybee/cocomp.hpp"
#include "honeybee/duel.hpp"
#include "honeybee/hexboard.hpp"
#include "honeybee/partial_order.hpp"
#include "honeybee/solitaire.hpp"
#include "honeybee/strategy.hpp"

namespace honeybee {

// ---- request parsing shared by the CLI and the service ----

// A game source is either an instance file or a hex board file; boards are
// recognised by their "cells" key.
inline Instance instance_or_board(const json& root) {
  if (root.is_object() && root.contains("cells")) return hex_to_graph(board_from_json(root));
  return instance_from_json(root);
}

inline bool state_is_consistent(const GameState& s) {
  const auto& g = s.g();
  if (s.wa.intersects(s.wb)) return false;
  if (!is_connected_subset(g, s.wa) || !is_connected_subset(g, s.wb)) return false;
  if (s.moves < 0 || s.stall < 0 || s.stall > s.stall_cap) return false;
  return s.to_move == (s.moves % 2 ? Player::B : Player::A);
}

inline SolveResult solve_by_method(const Instance& inst, NodeId v0, const std::string& method,
                                   const std::optional<PartialOrder>& order, std::size_t budget) {
  const auto& g = inst.graph;
  if (method == "exact") return solve_exact(g, v0, budget);
  if (method == "greedy") return solve_greedy(g, v0);
  if (method == "split") return solve_split_bounded(g, v0, inst.clique, budget);
  if (method == "cocomp") {
    if (order) return solve_cocomp(g, *order, v0);
    if (g.size() > 12) throw OrderError("no order supplied and the graph is too large to search for one");
    auto found = find_cocomparability_order(g);
    if (!found) throw OrderError("graph is not a co-comparability graph");
    return solve_cocomp(g, *found, v0);
  }
  throw InvalidInstance("unknown method '" + method + "' (exact, greedy, cocomp, split)");
}

// ---- sessions ----

struct ServiceOptions {
  std::size_t node_cap = 2000;
  std::string persist_dir;       // append-only JSONL per session when set
  bool validate_states = true;   // re-check state invariants before replying
  std::size_t solver_workers = 2;
  std::size_t ai_budget = 200'000;
  std::uint64_t id_salt = 0x5eed;
};

struct SessionRecord {
  std::string id;
  std::shared_ptr<const ColoredGraph> graph;
  GameState initial;
  GameState state;
  Player human = Player::A;
  Policy policy = Policy::Greedy;
  std::uint64_t seed = 0;
  std::vector<MoveRecord> transcript;
  std::vector<std::string> notes;
  std::mutex busy;  // one in-flight move per session

  bool finished() const { return winner(state).has_value(); }
};

struct Reply {
  int status = 200;
  json body;
};

inline Reply error_reply(int status, std::string code, std::string message) {
  return {status, json{{"code", std::move(code)}, {"message", std::move(message)}}};
}

class GameService {
 public:
  explicit GameService(ServiceOptions opt = {}) : opt_(std::move(opt)), solvers_(static_cast<std::ptrdiff_t>(
                                                                               std::max<std::size_t>(1, opt_.solver_workers))) {}

  Reply create_game(const std::string& text) {
    return guarded([&] {
      const json body = detail::parse_json(text);
      detail::require_object(body, "");
      detail::reject_unknown(body, "", {"board", "instance", "random_board", "human", "policy", "seed", "stall_cap"});
      Instance inst;
      const int sources = static_cast<int>(body.contains("board")) + static_cast<int>(body.contains("instance")) +
                          static_cast<int>(body.contains("random_board"));
      if (sources != 1) return error_reply(400, "bad_request", "give exactly one of board, instance, random_board");
      if (body.contains("board")) {
        inst = hex_to_graph(board_from_json(body["board"]));
      } else if (body.contains("instance")) {
        inst = instance_from_json(body["instance"]);
      } else {
        inst = hex_to_graph(random_board(board_params(body["random_board"])));
      }
      if (inst.graph.size() > opt_.node_cap)
        return error_reply(413, "too_large", "instance has " + std::to_string(inst.graph.size()) +
                                                 " nodes; the cap is " + std::to_string(opt_.node_cap));
      auto rec = std::make_shared<SessionRecord>();
      const std::string side = body.value("human", std::string("A"));
      if (side != "A" && side != "B") return error_reply(400, "bad_request", "human must be A or B");
      rec->human = side == "A" ? Player::A : Player::B;
      rec->policy = parse_policy(body.value("policy", std::string("greedy")));
      rec->seed = body.value("seed", std::uint64_t{0});
      const int cap = body.value("stall_cap", 0);
      rec->initial = new_game(inst, cap);
      rec->graph = rec->initial.graph;
      rec->state = rec->initial;
      rec->id = next_id();

      std::vector<MoveRecord> ai;
      if (rec->human == Player::B) ai_reply(*rec, ai);
      persist(*rec, rec->transcript);
      {
        std::unique_lock lock(sessions_mu_);
        sessions_[rec->id] = rec;
      }
      json out = session_json(*rec);
      out["instance"] = instance_to_json(inst);
      return Reply{201, out};
    });
  }

  Reply get_game(const std::string& id) {
    return guarded([&] {
      auto rec = find(id);
      if (!rec) return unknown(id);
      std::unique_lock lock(rec->busy, std::try_to_lock);
      if (!lock) return error_reply(409, "conflict", "a move for this session is in flight");
      return Reply{200, session_json(*rec)};
    });
  }

  Reply post_move(const std::string& id, const std::string& text) {
    return guarded([&] {
      auto rec = find(id);
      if (!rec) return unknown(id);
      std::unique_lock lock(rec->busy, std::try_to_lock);
      if (!lock) return error_reply(409, "conflict", "another move for this session is in flight");
      const json body = detail::parse_json(text);
      detail::require_object(body, "");
      detail::reject_unknown(body, "", {"color"});
      const auto color = static_cast<Color>(detail::as_int(detail::required(body, "", "color"), "/color"));
      if (rec->finished()) return error_reply(409, "game_over", "the game is over");
      if (rec->state.to_move != rec->human) return error_reply(409, "not_your_turn", "it is the AI's turn");
      if (auto r = violated_rule(rec->state, color)) {
        Reply e = error_reply(409, "rule_violation", std::string(rule_name(*r)) + ": " + rule_message(*r, color));
        e.body["rule"] = rule_name(*r);
        return e;
      }
      std::vector<MoveRecord> made(1);
      rec->state = apply_move(rec->state, color, &made[0]);
      rec->transcript.push_back(made[0]);
      ai_reply(*rec, made);
      persist(*rec, made);
      json out = session_json(*rec);
      json moves = json::array();
      for (const auto& m : made) moves.push_back(move_to_json(m));
      out["moves"] = moves;
      return Reply{200, out};
    });
  }

  Reply solve(const std::string& text) {
    return guarded([&] {
      const json body = detail::parse_json(text);
      detail::require_object(body, "");
      detail::reject_unknown(body, "", {"instance", "start", "method", "budget", "order"});
      const Instance inst = instance_from_json(detail::required(body, "", "instance"));
      if (inst.graph.size() > opt_.node_cap)
        return error_reply(413, "too_large", "instance has " + std::to_string(inst.graph.size()) +
                                                 " nodes; the cap is " + std::to_string(opt_.node_cap));
      NodeId v0;
      if (body.contains("start")) {
        v0 = detail::resolve(inst.graph, body["start"], "/start");
      } else if (inst.start) {
        v0 = *inst.start;
      } else {
        return error_reply(400, "bad_request", "no start node given");
      }
      std::optional<PartialOrder> order;
      if (body.contains("order")) order = order_from_json(inst.graph, body["order"]);
      const auto budget = body.value("budget", kDefaultBudget);
      solvers_.acquire();
      struct Release {
        std::counting_semaphore<>& s;
        ~Release() { s.release(); }
      } release{solvers_};
      return Reply{200, result_to_json(solve_by_method(inst, v0, body.value("method", std::string("exact")), order,
                                                       budget))};
    });
  }

  Reply health() const {
    std::shared_lock lock(sessions_mu_);
    return {200, json{{"status", "ok"}, {"sessions", sessions_.size()}}};
  }

  // Holds a session's move lock, as an in-flight request would.
  std::unique_lock<std::mutex> hold(const std::string& id) {
    auto rec = find(id);
    if (!rec) throw InvalidInstance("unknown session '" + id + "'");
    return std::unique_lock<std::mutex>(rec->busy);
  }

  // Replays a session's transcript from its opening state.
  bool replay_matches(const std::string& id) {
    auto rec = find(id);
    if (!rec) return false;
    std::lock_guard lock(rec->busy);
    const GameState s = replay(rec->initial, rec->transcript);
    return s.wa == rec->state.wa && s.wb == rec->state.wb && s.last_a == rec->state.last_a &&
           s.last_b == rec->state.last_b && s.moves == rec->state.moves && s.stall == rec->state.stall;
  }

  const ServiceOptions& options() const { return opt_; }

 private:
  template <typename F>
  Reply guarded(F&& f) {
    try {
      return f();
    } catch (const ParseError& e) {
      return error_reply(400, e.code(), e.what());
    } catch (const RuleViolation& e) {
      return error_reply(409, e.code(), e.what());
    } catch (const BudgetExceeded& e) {
      return error_reply(422, e.code(), e.what());
    } catch (const Error& e) {
      return error_reply(422, e.code(), e.what());
    } catch (const json::exception& e) {
      return error_reply(400, "bad_request", e.what());
    }
  }

  static BoardParams board_params(const json& j) {
    detail::require_object(j, "/random_board");
    detail::reject_unknown(j, "/random_board", {"rows", "cols", "k", "seed", "symmetric", "holes"});
    BoardParams p;
    p.rows = j.value("rows", p.rows);
    p.cols = j.value("cols", p.cols);
    p.k = j.value("k", p.k);
    p.seed = j.value("seed", p.seed);
    p.symmetric = j.value("symmetric", p.symmetric);
    p.holes = j.value("holes", p.holes);
    p.require_odd = true;
    return p;
  }

  std::shared_ptr<SessionRecord> find(const std::string& id) const {
    std::shared_lock lock(sessions_mu_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

  static Reply unknown(const std::string& id) { return error_reply(404, "not_found", "no session '" + id + "'"); }

  std::string next_id() {
    const auto n = ++counter_;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(mix_seed(opt_.id_salt, n)));
    return buf;
  }

  void ai_reply(SessionRecord& rec, std::vector<MoveRecord>& out) {
    if (rec.finished() || rec.state.to_move == rec.human) return;
    StrategyOptions so;
    so.seed = rec.seed;
    so.search.budget = opt_.ai_budget;
    auto choice = strategy_move(rec.state, rec.policy, so);
    if (!choice.note.empty()) rec.notes.push_back(choice.note);
    MoveRecord m;
    rec.state = apply_move(rec.state, choice.color, &m);
    rec.transcript.push_back(m);
    out.push_back(m);
  }

  void persist(const SessionRecord& rec, const std::vector<MoveRecord>& moves) const {
    if (opt_.persist_dir.empty()) return;
    std::filesystem::create_directories(opt_.persist_dir);
    std::ofstream f(std::filesystem::path(opt_.persist_dir) / (rec.id + ".jsonl"), std::ios::app);
    f << transcript_to_jsonl(moves);
  }

  json session_json(const SessionRecord& rec) const {
    if (opt_.validate_states && !state_is_consistent(rec.state))
      throw InvalidInstance("internal error: session state failed validation");
    json j;
    j["id"] = rec.id;
    j["human"] = player_name(rec.human);
    j["policy"] = policy_name(rec.policy);
    j["seed"] = rec.seed;
    j["status"] = rec.finished() ? "finished" : "active";
    j["state"] = state_to_json(rec.state);
    j["legal_colors"] = j["state"]["legal_colors"];
    j["scores"] = {{"A", j["state"]["score_a"]}, {"B", j["state"]["score_b"]}};
    j["verdict"] = j["state"]["verdict"];
    json t = json::array();
    for (const auto& m : rec.transcript) t.push_back(move_to_json(m));
    j["transcript"] = t;
    j["notes"] = rec.notes;
    return j;
  }

  ServiceOptions opt_;
  mutable std::shared_mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<SessionRecord>> sessions_;
  std::atomic<std::uint64_t> counter_{0};
  std::counting_semaphore<> solvers_;
};

// ---- HTTP binding ----

inline void send(httplib::Response& res, const Reply& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

inline void mount_routes(httplib::Server& srv, GameService& svc, const std::string& static_dir = "") {
  srv.Get("/healthz", [&svc](const httplib::Request&, httplib::Response& res) { send(res, svc.health()); });
  srv.Post("/games", [&svc](const httplib::Request& req, httplib::Response& res) { send(res, svc.create_game(req.body)); });
  srv.Get(R"(/games/([^/]+))", [&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.get_game(req.matches[1]));
  });
  srv.Post(R"(/games/([^/]+)/moves)", [&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.post_move(req.matches[1], req.body));
  });
  srv.Post("/solve", [&svc](const httplib::Request& req, httplib::Response& res) { send(res, svc.solve(req.body)); });
  if (!static_dir.empty() && !srv.set_mount_point("/", static_dir))
    throw InvalidInstance("static directory '" + static_dir + "' does not exist");
  srv.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (res.status == 404 && res.body.empty())
      send(res, error_reply(404, "not_found", "no route for " + req.method + " " + req.path));
  });
}

// Port from HONEYBEE_PORT when set, else the given default.
inline int service_port(int flag_port) {
  if (const char* env = std::getenv("HONEYBEE_PORT"); env && *env) {
    char* end = nullptr;
    const long p = std::strtol(env, &end, 10);
    if (*end || p < 0 || p > 65535) throw InvalidInstance(std::string("HONEYBEE_PORT is not a port: ") + env);
    return static_cast<int>(p);
  }
  return flag_port;
}

}  // namespace honeybee
