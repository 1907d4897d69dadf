#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "honeybee/reductions.hpp"
#include "honeybee/service.hpp"

namespace honeybee {

namespace cli_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("io_error", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("io_error", "cannot write '" + path.string() + "'");
  f << text;
}

inline std::string seq_text(const ColorSequence& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
  return out;
}

struct SolveArgs {
  std::string in, start, method = "exact", order;
  std::size_t budget = kDefaultBudget;
  bool json = false;
};

inline int run_solve(const SolveArgs& a, std::ostream& out) {
  const Instance inst = load_instance(read_file(a.in));
  NodeId v0;
  if (!a.start.empty()) {
    auto v = inst.graph.find(a.start);
    if (!v) throw InvalidInstance("unknown start node '" + a.start + "'");
    v0 = *v;
  } else if (inst.start) {
    v0 = *inst.start;
  } else {
    throw InvalidInstance("no start node: pass --start or set \"start\" in the instance");
  }
  std::optional<PartialOrder> order;
  if (!a.order.empty()) order = load_order(inst.graph, read_file(a.order));
  const SolveResult r = solve_by_method(inst, v0, a.method, order, a.budget);
  if (a.json) {
    out << result_to_json(r).dump() << "\n";
  } else {
    out << "method " << r.method << "\nlength " << r.length << "\nessential " << r.essential_length
        << "\nsequence " << seq_text(r.sequence) << "\n";
  }
  return 0;
}

struct GenArgs {
  std::string kind, in, out;
  bool expand_pots = false;
  BoardParams board;
};

inline int run_gen(const GenArgs& a, std::ostream& out) {
  namespace fs = std::filesystem;
  using namespace reductions;
  fs::create_directories(a.out);
  if (a.kind == "board") {
    const HexBoard b = random_board(a.board);
    write_file(fs::path(a.out) / "board.json", write_board(b));
    write_file(fs::path(a.out) / "instance.json", write_instance(hex_to_graph(b)));
    out << (fs::path(a.out) / "board.json").string() << "\n" << (fs::path(a.out) / "instance.json").string() << "\n";
    return 0;
  }
  if (a.in.empty()) throw InvalidInstance("gen " + a.kind + " needs --in");
  const json src = honeybee::detail::parse_json(read_file(a.in));
  ReductionArtifact art;
  if (a.kind == "fvs") {
    art = gen_fvs_split(digraph_from_json(src));
  } else if (a.kind == "scs-tree") {
    const Sequences m = scs_to_mscs(sequences_from_json(src, false));
    art = gen_mscs_tree(m);
    art.construction = "scs-tree";
    art.relation = "a binary common supersequence of length t maps to a conquest within 2t - 2 calls";
    art.meta["mscs"] = m.seqs;
  } else if (a.kind == "mscs-tree") {
    art = gen_mscs_tree(sequences_from_json(src, true));
  } else if (a.kind == "scs-sp") {
    art = gen_scs_sp(sequences_from_json(src, false), {a.expand_pots});
  } else if (a.kind == "qbf") {
    art = gen_qbf(qbf_from_json(src), {a.expand_pots});
  } else {
    throw InvalidInstance("unknown construction '" + a.kind + "'");
  }
  write_file(fs::path(a.out) / "instance.json", write_instance(art.instance));
  write_file(fs::path(a.out) / "provenance.json", write_provenance(art));
  out << (fs::path(a.out) / "instance.json").string() << "\n"
      << (fs::path(a.out) / "provenance.json").string() << "\n";
  return 0;
}

struct PlayArgs {
  std::string in, side = "A", policy = "greedy", transcript;
  std::uint64_t seed = 0;
};

// Human moves come from `in`, one color per line.
inline int run_play(const PlayArgs& a, std::istream& in, std::ostream& out) {
  const Instance inst = instance_or_board(detail::parse_json(read_file(a.in)));
  if (a.side != "A" && a.side != "B") throw InvalidInstance("--side must be A or B");
  const Player human = a.side == "A" ? Player::A : Player::B;
  const Policy policy = parse_policy(a.policy);
  StrategyOptions so;
  so.seed = a.seed;
  GameState s = new_game(inst);
  std::vector<MoveRecord> moves;
  auto show = [&](const MoveRecord& m) {
    out << "round " << m.round << ": " << player_name(m.player) << " calls " << m.color << " (+" << m.gained
        << ")  score " << s.g().weight_of(s.wa) << "-" << s.g().weight_of(s.wb) << "\n";
  };
  while (!winner(s)) {
    MoveRecord m;
    if (s.to_move == human) {
      out << "legal " << seq_text(legal_colors(s)) << "> " << std::flush;
      std::string line;
      if (!std::getline(in, line)) {
        out << "\nstopped before the end\n";
        break;
      }
      Color c;
      try {
        c = static_cast<Color>(std::stoi(line));
      } catch (const std::exception&) {
        out << "not a color: " << line << "\n";
        continue;
      }
      if (auto r = violated_rule(s, c)) {
        out << "illegal: " << rule_name(*r) << ": " << rule_message(*r, c) << "\n";
        continue;
      }
      s = apply_move(s, c, &m);
    } else {
      auto choice = strategy_move(s, policy, so);
      if (!choice.note.empty()) out << "note: " << choice.note << "\n";
      s = apply_move(s, choice.color, &m);
    }
    moves.push_back(m);
    show(m);
  }
  if (auto v = winner(s)) out << "winner " << player_name(v->winner) << " by " << v->reason << "\n";
  if (!a.transcript.empty()) write_file(a.transcript, transcript_to_jsonl(moves));
  return 0;
}

struct SimulateArgs {
  std::string in, policy_a = "greedy", policy_b = "greedy";
  int games = 10;
  std::uint64_t seed = 0;
  BoardParams board;
};

// Without --in every game gets its own seeded random board.
inline int run_simulate(const SimulateArgs& a, std::ostream& out) {
  const Policy pa = parse_policy(a.policy_a), pb = parse_policy(a.policy_b);
  if (a.games < 1) throw InvalidInstance("--games must be positive");
  std::optional<Instance> fixed;
  if (!a.in.empty()) fixed = instance_or_board(detail::parse_json(read_file(a.in)));
  int wins_a = 0, wins_b = 0;
  long long total_moves = 0;
  std::map<std::string, int> reasons;
  json per_game = json::array();
  for (int i = 0; i < a.games; ++i) {
    Instance inst;
    if (fixed) {
      inst = *fixed;
    } else {
      BoardParams p = a.board;
      p.seed = mix_seed(a.seed, static_cast<std::uint64_t>(i));
      p.require_odd = true;
      inst = hex_to_graph(random_board(p));
    }
    StrategyOptions oa, ob;
    oa.seed = mix_seed(a.seed, 2 * static_cast<std::uint64_t>(i) + 1);
    ob.seed = mix_seed(a.seed, 2 * static_cast<std::uint64_t>(i) + 2);
    const GameRecord rec = play_out(new_game(inst), pa, pb, oa, ob);
    (rec.verdict.winner == Player::A ? wins_a : wins_b)++;
    ++reasons[rec.verdict.reason];
    total_moves += static_cast<long long>(rec.moves.size());
    per_game.push_back({{"winner", player_name(rec.verdict.winner)},
                        {"reason", rec.verdict.reason},
                        {"moves", rec.moves.size()},
                        {"score_a", rec.verdict.weight_a},
                        {"score_b", rec.verdict.weight_b}});
  }
  json j{{"policy_a", policy_name(pa)}, {"policy_b", policy_name(pb)}, {"games", a.games}, {"seed", a.seed},
         {"wins", {{"A", wins_a}, {"B", wins_b}}}, {"reasons", reasons}, {"total_moves", total_moves},
         {"per_game", per_game}};
  out << j.dump() << "\n";
  return 0;
}

struct ServeArgs {
  int port = 8080;
  std::string static_dir, persist_dir, host = "127.0.0.1";
  std::size_t node_cap = 2000;
};

inline int run_serve(const ServeArgs& a, std::ostream& out) {
  ServiceOptions opt;
  opt.node_cap = a.node_cap;
  opt.persist_dir = a.persist_dir;
  GameService svc(opt);
  httplib::Server srv;
  mount_routes(srv, svc, a.static_dir);
  const int port = service_port(a.port);
  out << "listening on " << a.host << ":" << port << std::endl;
  if (!srv.listen(a.host, port)) throw Error("io_error", "cannot listen on port " + std::to_string(port));
  return 0;
}

inline void add_board_flags(CLI::App* cmd, BoardParams& p) {
  cmd->add_option("--rows", p.rows, "board rows");
  cmd->add_option("--cols", p.cols, "board columns");
  cmd->add_option("--k", p.k, "number of colors");
  cmd->add_option("--holes", p.holes, "hole probability in [0, 0.5)");
  cmd->add_flag("--symmetric", p.symmetric, "colors invariant under a half turn");
}

}  // namespace cli_detail

// Exit status: 0 success, 1 domain error, 2 usage error.
inline int cli_dispatch(int argc, const char* const* argv, std::istream& in = std::cin, std::ostream& out = std::cout,
                        std::ostream& err = std::cerr) {
  using namespace cli_detail;
  CLI::App app{"Honey-Bee color-conquest engine, solvers and instance generators", "honeybee"};
  app.require_subcommand(1);
  bool json_errors = false;
  app.add_flag("--json-errors", json_errors, "report errors as one JSON line on stderr");

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "shortest full conquest from a start node");
  solve->add_option("--in", sa.in, "instance file")->required();
  solve->add_option("--start", sa.start, "start node id");
  solve->add_option("--method", sa.method, "exact, greedy, cocomp or split")
      ->check(CLI::IsMember({"exact", "greedy", "cocomp", "split"}));
  solve->add_option("--order", sa.order, "order file for cocomp");
  solve->add_option("--budget", sa.budget, "state budget for exact and split");
  solve->add_flag("--json", sa.json, "print the result as JSON");

  GenArgs ga;
  ga.board.require_odd = false;
  auto* gen = app.add_subcommand("gen", "write a generated instance and its provenance");
  gen->add_option("kind", ga.kind, "fvs, scs-tree, mscs-tree, scs-sp, qbf or board")
      ->required()
      ->check(CLI::IsMember({"fvs", "scs-tree", "mscs-tree", "scs-sp", "qbf", "board"}));
  gen->add_option("--in", ga.in, "source instance file");
  gen->add_option("--out", ga.out, "output directory")->required();
  gen->add_flag("--expand-pots", ga.expand_pots, "expand pots into unit nodes");
  gen->add_option("--seed", ga.board.seed, "board seed");
  gen->add_flag("--odd", ga.board.require_odd, "force an odd cell count");
  add_board_flags(gen, ga.board);

  PlayArgs pa;
  auto* play = app.add_subcommand("play", "play against a policy, reading your colors from stdin");
  play->add_option("--in", pa.in, "instance or board file")->required();
  play->add_option("--side", pa.side, "your side, A or B");
  play->add_option("--policy", pa.policy, "opponent policy: greedy, minimax or random");
  play->add_option("--seed", pa.seed, "seed for the random policy");
  play->add_option("--transcript", pa.transcript, "write the JSONL transcript here");

  SimulateArgs sm;
  auto* sim = app.add_subcommand("simulate", "two policies head to head");
  sim->add_option("--in", sm.in, "instance or board file (default: random boards)");
  sim->add_option("--policyA", sm.policy_a, "policy for A");
  sim->add_option("--policyB", sm.policy_b, "policy for B");
  sim->add_option("--games", sm.games, "number of games");
  sim->add_option("--seed", sm.seed, "seed");
  add_board_flags(sim, sm.board);

  ServeArgs sv;
  auto* serve = app.add_subcommand("serve", "HTTP game service");
  serve->add_option("--port", sv.port, "port (HONEYBEE_PORT overrides)");
  serve->add_option("--host", sv.host, "bind address");
  serve->add_option("--static", sv.static_dir, "directory served at /");
  serve->add_option("--persist", sv.persist_dir, "directory for per-session JSONL transcripts");
  serve->add_option("--node-cap", sv.node_cap, "largest accepted instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) return run_solve(sa, out);
    if (*gen) return run_gen(ga, out);
    if (*play) return run_play(pa, in, out);
    if (*sim) return run_simulate(sm, out);
    if (*serve) return run_serve(sv, out);
  } catch (const Error& e) {
    if (json_errors || (*solve && sa.json)) {
      err << json{{"code", e.code()}, {"message", e.what()}}.dump() << "\n";
    } else {
      err << "error: " << e.what() << "\n";
    }
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    if (json_errors) {
      err << json{{"code", "io_error"}, {"message", e.what()}}.dump() << "\n";
    } else {
      err << "error: " << e.what() << "\n";
    }
    return 1;
  }
  return 2;
}

}  // namespace honeybee
