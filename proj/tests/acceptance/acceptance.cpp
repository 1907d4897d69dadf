// One PASS/FAIL line per acceptance criterion. Exit status 0 only when every
// line passes.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "honeybee/cli.hpp"
#include "honeybee/cocomp.hpp"
#include "honeybee/honeybee.hpp"
#include "support/generators.hpp"
#include "support/naive_game.hpp"
#include "support/outerplanar_gen.hpp"
#include "support/scenes.hpp"

using namespace honeybee;
using namespace honeybee::reductions;
using namespace hbtest;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

bool replays(const ColoredGraph& g, NodeId v0, const ColorSequence& seq) {
  return conquer(g, g.singleton(v0), seq).is_full();
}

// ---- solitaire ----

Outcome conquest_bound() {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    Rng rng(mix_seed(1001, seed));
    const int n = rng.between(1, 10);
    const int k = rng.between(1, 4);
    const auto g = random_connected(rng, n, k, 0.25);
    const auto v0 = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)));
    const auto r = solve_exact(g, v0);
    if (r.length > static_cast<int>(g.size()))
      return fail("seed " + std::to_string(seed) + ": length " + std::to_string(r.length) + " > |V|");
    if (!replays(g, v0, r.sequence)) return fail("seed " + std::to_string(seed) + ": sequence does not conquer V");
    ++checked;
  }
  return {true, std::to_string(checked) + " instances"};
}

Outcome cocomp_equivalence() {
  int extremal = 0, interior = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Rng rng(mix_seed(2002, seed));
    const auto og = random_permutation_graph(rng, rng.between(6, 10), rng.between(3, 4));
    const auto& g = og.graph;
    for (NodeId v0 = 0; v0 < g.size(); ++v0) {
      const bool ext = og.order.is_minimal(v0) || og.order.is_maximal(v0);
      const auto exact = solve_exact(g, v0);
      const auto dp = solve_cocomp(g, og.order, v0);
      if (dp.length != exact.length || !replays(g, v0, dp.sequence)) {
        std::ostringstream w;
        w << "seed " << seed << " start " << g.name(v0) << (ext ? " (extremal)" : " (interior)") << ": dp "
          << dp.length << " exact " << exact.length << "; instance " << instance_to_json(make_instance(g)).dump()
          << " order " << order_to_json(g, og.order).dump();
        return fail(w.str());
      }
      (ext ? extremal : interior)++;
    }
  }
  if (!extremal || !interior) return fail("sweep missed a start kind");
  return {true, std::to_string(extremal) + " extremal and " + std::to_string(interior) + " interior starts"};
}

Outcome fvs_check(const Digraph& d, const std::string& label) {
  const auto art = gen_fvs_split(d);
  const auto r = solve_exact(art.instance.graph, *art.instance.start);
  const int expect = static_cast<int>(d.nodes.size()) + brute_fvs(d).size;
  if (r.length != expect)
    return fail(label + ": solitaire " + std::to_string(r.length) + " vs |X| + t* = " + std::to_string(expect));
  return {};
}

Outcome fvs_equivalence() {
  int count = 0;
  for (int n = 1; n <= 4; ++n) {
    std::vector<std::pair<int, int>> slots;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (x != y) slots.emplace_back(x, y);
    for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
      Digraph d;
      for (int i = 0; i < n; ++i) d.nodes.push_back("x" + std::to_string(i));
      for (std::size_t b = 0; b < slots.size(); ++b)
        if (mask >> b & 1u) d.arcs.push_back(slots[b]);
      if (auto o = fvs_check(d, "n " + std::to_string(n) + " mask " + std::to_string(mask)); !o.pass) return o;
      ++count;
    }
  }
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(mix_seed(3003, seed));
    Digraph d;
    for (int i = 0; i < 5; ++i) d.nodes.push_back("x" + std::to_string(i));
    const double p = 0.15 + 0.35 * rng.unit();
    for (int x = 0; x < 5; ++x)
      for (int y = 0; y < 5; ++y)
        if (x != y && rng.chance(p)) d.arcs.emplace_back(x, y);
    if (auto o = fvs_check(d, "sampled seed " + std::to_string(seed)); !o.pass) return o;
    ++count;
  }
  return {true, std::to_string(count) + " digraphs"};
}

Outcome tree_equivalence() {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(mix_seed(4004, seed));
    Sequences m;
    const int s = rng.between(1, 3);
    for (int i = 0; i < s; ++i) m.seqs.push_back(random_mscs_sequence(rng, rng.between(1, 6)));
    m.t = 6;
    validate_mscs(m);
    const auto art = gen_mscs_tree(m);
    if (art.instance.graph.k() != 3) return fail("tree has k != 3");
    const auto r = solve_exact(art.instance.graph, *art.instance.start);
    const auto opt = brute_scs(m.seqs);
    if (r.length != opt.length)
      return fail("seed " + std::to_string(seed) + ": solitaire " + std::to_string(r.length) + " vs optimum " +
                  std::to_string(opt.length));
  }
  return {true, "100 instances"};
}

Outcome scs_oracle_and_pots() {
  const auto r = brute_scs({"1001", "0101", "1010"});
  if (r.length != 5 || r.witness != "10101") return fail("brute_scs gave " + std::to_string(r.length) + " " + r.witness);
  const Sequences src{{"1001", "0101", "1010"}, 4};
  for (bool expand : {false, true}) {
    const auto art = gen_scs_sp(src, {expand});
    const auto& g = art.instance.graph;
    std::map<std::string, Weight> pots;
    for (NodeId v = 0; v < g.size(); ++v) {
      const auto role = art.roles.at(g.name(v)).get<std::string>();
      if (role.rfind("pot:", 0) == 0) pots[role] += g.weight(v);
    }
    for (const char* h : {"pot:1", "pot:2", "pot:3"})
      if (pots[h] != 48) return fail(std::string(h) + " has size " + std::to_string(pots[h]));
    if (pots["pot:B"] != 117) return fail("H_B has size " + std::to_string(pots["pot:B"]));
  }
  return {true, "(5, 10101); pots 48/48/48 and 117, weighted and expanded"};
}

// ---- two players ----

Outcome outerplanar_agreement() {
  int a_wins = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(mix_seed(6006, seed));
    const int n = 7 + 2 * rng.between(0, 2);
    const auto inst = random_outerplanar(rng, n, 4);
    const auto g = share(inst.graph);
    const auto fast = outerplanar_solve(g, inst.walk, inst.a0, inst.b0);
    MinimaxOptions mo;
    mo.budget = 50'000'000;
    const auto slow = minimax(g, inst.a0, inst.b0, mo);
    if (fast.winner != slow.winner)
      return fail("seed " + std::to_string(seed) + ": outerplanar says " + player_name(fast.winner) +
                  ", minimax says " + player_name(slow.winner));
    a_wins += slow.winner == Player::A;
  }
  return {true, "100 instances, A wins " + std::to_string(a_wins)};
}

Outcome rules_conformance() {
  // permanent blocking: with R2, B breaks through against a black-caller
  {
    auto sc = blocking_scene();
    GameState s = sc.s;
    for (int i = 0; i < 40 && !winner(s); ++i) {
      const auto legal = legal_colors(s);
      Color c;
      if (s.to_move == Player::A) {
        c = std::find(legal.begin(), legal.end(), kBlack) != legal.end() ? kBlack : legal.front();
      } else {
        c = greedy_move(s);
      }
      s = apply_move(s, c);
    }
    if (!winner(s) || winner(s)->winner != Player::B || winner(s)->reason != "majority")
      return fail("blocking scene: B did not win by majority under R2");
    // without R2, A calls black every turn and R1 leaves B only colors that
    // gain nothing, so the position never changes
    naive::Territory a{0, 1, 2, 3}, b{4, 5};
    if (naive::reach(*sc.g, b, a, kBlack).empty()) return fail("blocking scene: black does not gain for B");
    for (int c = 0; c < 4; ++c)
      if (c != kBlack && !naive::reach(*sc.g, b, a, c).empty()) return fail("blocking scene: B escapes without R2");
    if (!naive::reach(*sc.g, a, b, kBlack).empty()) return fail("blocking scene: black gains for A");
  }
  // R3: the mover must step into the middle, and that decides the game
  {
    auto g = middle_path();
    GameState s = new_game(g, 0, 4);
    if (legal_colors(s) != std::vector<Color>{kDark}) return fail("middle path: A's legal set is not {dark}");
    for (Color wait : {kWhite, kLight, kBlack})
      if (violated_rule(s, wait) != Rule::R3) return fail("middle path: waiting call not rejected by R3");
    s = apply_move(apply_move(s, kDark), kLight);
    if (!winner(s) || winner(s)->winner != Player::B) return fail("middle path: B did not win");
    if (minimax(g, 0, 4).winner != Player::B) return fail("middle path: minimax disagrees");
  }
  // property sweep against an independent rule implementation
  int moves = 0, waits = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    Rng rng(mix_seed(7007, seed));
    const int n = 2 * rng.between(2, 8) + 1;
    auto g = share(random_connected(rng, n, rng.between(3, 5), 0.25));
    const Policy pa = seed % 3 == 0 ? Policy::Greedy : Policy::Random;
    const Policy pb = seed % 2 == 0 ? Policy::Greedy : Policy::Random;
    const auto rec = play_out(new_game(g, 0, static_cast<NodeId>(n - 1)), pa, pb, {rng.next()}, {rng.next()});
    naive::Territory ta{0}, tb{static_cast<NodeId>(n - 1)};
    int last_a = -1, last_b = -1;
    for (const auto& m : rec.moves) {
      const bool is_a = m.player == Player::A;
      auto& mine = is_a ? ta : tb;
      auto& theirs = is_a ? tb : ta;
      const int my_last = is_a ? last_a : last_b, their_last = is_a ? last_b : last_a;
      const std::string where = "seed " + std::to_string(seed) + " round " + std::to_string(m.round);
      if (m.color == their_last) return fail(where + ": R1 violated");
      if (m.color == my_last) return fail(where + ": R2 violated");
      const auto add = naive::reach(*g, mine, theirs, m.color);
      if (add.empty()) {
        ++waits;
        for (int c = 0; c < g->k(); ++c)
          if (c != my_last && c != their_last && !naive::reach(*g, mine, theirs, c).empty())
            return fail(where + ": non-gaining call while color " + std::to_string(c) + " gains");
      }
      if (naive::weight(*g, add) != m.gained) return fail(where + ": recorded gain differs");
      mine.insert(add.begin(), add.end());
      (is_a ? last_a : last_b) = m.color;
      ++moves;
    }
  }
  return {true, "both scenes; sweep of " + std::to_string(moves) + " moves, " + std::to_string(waits) +
                    " non-gaining and all forced"};
}

QbfFormula random_formula(Rng& rng, int n) {
  QbfFormula f;
  f.vars = 2 * n;
  const int m = rng.between(1, 5);
  for (int j = 0; j < m; ++j) {
    std::vector<int> vars(static_cast<std::size_t>(f.vars));
    for (int v = 0; v < f.vars; ++v) vars[static_cast<std::size_t>(v)] = v + 1;
    rng.shuffle(vars);
    const int len = rng.between(1, std::min(3, f.vars));
    std::vector<int> c;
    for (int i = 0; i < len; ++i) c.push_back(rng.chance(0.5) ? vars[static_cast<std::size_t>(i)] : -vars[static_cast<std::size_t>(i)]);
    f.clauses.push_back(c);
  }
  return f;
}

Outcome qbf_audit_one(const QbfFormula& f, const std::string& label) {
  const long long n = f.vars / 2;
  for (bool expand : {false, true}) {
    const auto art = gen_qbf(f, {expand});
    const auto& g = art.instance.graph;
    std::map<std::string, long long> nodes, weight;
    for (NodeId v = 0; v < g.size(); ++v) {
      const auto role = art.roles.at(g.name(v)).get<std::string>();
      ++nodes[role];
      weight[role] += g.weight(v);
    }
    auto bad = [&](const std::string& what, long long got, long long want) {
      return fail(label + (expand ? " expanded" : "") + ": " + what + " " + std::to_string(got) + ", expected " +
                  std::to_string(want));
    };
    if (nodes["path-A"] != 9 * n + 1) return bad("pseudo-path A", nodes["path-A"], 9 * n + 1);
    if (nodes["path-B"] != 9 * n + 1) return bad("pseudo-path B", nodes["path-B"], 9 * n + 1);
    for (int var = 1; var <= f.vars; ++var) {
      const long long k = n - (var + 1) / 2;  // variable gadgets after this one
      const long long want = var % 2 ? 9 * k + 6 : 9 * k + 1;
      for (const char* side : {"F", "T"}) {
        const auto tag = "wait:" + std::to_string(var) + side;
        if (nodes[tag] != want) return bad(tag, nodes[tag], want);
      }
    }
    for (std::size_t j = 1; j <= f.clauses.size(); ++j) {
      const auto tag = "clause:" + std::to_string(j);
      if (weight[tag] != 2 * n * n) return bad(tag, weight[tag], 2 * n * n);
      if (expand && nodes[tag] != 2 * n * n) return bad(tag + " nodes", nodes[tag], 2 * n * n);
    }
    for (const char* pot : {"pot-A", "pot-B"}) {
      if (weight[pot] != 2 * n * n * n) return bad(pot, weight[pot], 2 * n * n * n);
      if (expand && nodes[pot] != 2 * n * n * n) return bad(std::string(pot) + " nodes", nodes[pot], 2 * n * n * n);
    }
    if (g.k() != 4 || !is_connected(g) || g.total_weight() % 2 == 0) return fail(label + ": malformed instance");
  }
  return {};
}

Outcome qbf_audit() {
  if (auto o = qbf_audit_one({4, {{1, 2, 3}, {1, -2, 4}, {-2, 3, -4}}}, "example formula"); !o.pass) return o;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Rng rng(mix_seed(8008, seed));
    const auto f = random_formula(rng, rng.between(1, 3));
    if (auto o = qbf_audit_one(f, "seed " + std::to_string(seed)); !o.pass) return o;
  }
  return {true, "example formula and 60 random formulas"};
}

// ---- determinism ----

std::string cli_output(std::vector<std::string> args) {
  args.insert(args.begin(), "honeybee");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in;
  std::ostringstream out, err;
  cli_dispatch(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return out.str() + err.str();
}

// Everything the tools serialize, concatenated.
std::string serialized_outputs() {
  std::string all;
  Rng rng(9009);
  for (int i = 0; i < 20; ++i) {
    const auto og = random_permutation_graph(rng, 8, 3);
    all += write_instance(make_instance(og.graph));
    for (const auto& r : {solve_exact(og.graph, 0), solve_greedy(og.graph, 0), solve_cocomp(og.graph, og.order, 0)})
      all += result_to_json(r).dump() + "\n";
  }
  for (const auto& art : {gen_fvs_split({{"x", "y", "z"}, {{0, 1}, {1, 2}, {2, 0}}, 1}),
                          gen_mscs_tree(scs_to_mscs({{"1001", "0101"}, 5})),
                          gen_scs_sp({{"1001", "0101", "1010"}, 4}),
                          gen_qbf({4, {{1, 2, 3}, {1, -2, 4}, {-2, 3, -4}}}, {true})}) {
    all += write_instance(art.instance) + write_provenance(art);
  }
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    BoardParams p;
    p.rows = 7;  // odd by odd, so a half turn fixes the centre cell
    p.cols = 7;
    p.seed = seed;
    p.holes = 0.2;
    p.symmetric = seed % 2;
    p.require_odd = true;
    const auto board = random_board(p);
    all += write_board(board);
    const auto rec = play_out(new_game(hex_to_graph(board)), Policy::Random, Policy::Greedy, {seed}, {seed + 1});
    all += transcript_to_jsonl(rec.moves);
  }
  all += cli_output({"simulate", "--policyA", "random", "--policyB", "greedy", "--games", "10", "--seed", "1"});
  return all;
}

std::string self_path;

Outcome determinism() {
  const std::string first = serialized_outputs();
  const std::string second = serialized_outputs();
  if (first != second) return fail("two runs in one process differ");
  // a fresh process must print the same bytes
  std::string other;
  if (FILE* p = ::popen((self_path + " --emit-serialized").c_str(), "r")) {
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) other.append(buf.data(), got);
    ::pclose(p);
  }
  if (other != first) return fail("a second process produced different bytes");
  return {true, std::to_string(first.size()) + " bytes identical across runs and processes"};
}

struct Criterion {
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  self_path = argv[0];
  if (argc > 1 && std::string(argv[1]) == "--emit-serialized") {
    std::cout << serialized_outputs();
    return 0;
  }
  const std::vector<Criterion> criteria{
      {"conquest-bound", 60, conquest_bound},
      {"cocomp-dp-equivalence", 120, cocomp_equivalence},
      {"fvs-equivalence", 120, fvs_equivalence},
      {"tree-equivalence", 120, tree_equivalence},
      {"scs-oracle-and-pot-sizes", 60, scs_oracle_and_pots},
      {"outerplanar-agreement", 300, outerplanar_agreement},
      {"rules-conformance", 120, rules_conformance},
      {"qbf-structural-audit", 120, qbf_audit},
      {"determinism", 120, determinism},
  };
  const std::string only = argc > 1 ? argv[1] : "";
  bool all_pass = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    if (!only.empty() && only != c.name) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && secs > c.limit_s) o = fail("took longer than " + std::to_string(static_cast<int>(c.limit_s)) + " s");
    all_pass = all_pass && o.pass;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << c.name << ": " << o.detail << " (" << timing
              << ")" << std::endl;
  }
  return all_pass ? 0 : 1;
}
