#include <gtest/gtest.h>

#include "honeybee/solitaire.hpp"
#include "support/generators.hpp"

using namespace honeybee;
using hbtest::make_graph;
using hbtest::path_graph;

namespace {

bool replays(const ColoredGraph& g, NodeId v0, const ColorSequence& seq) {
  return conquer(g, g.singleton(v0), seq).is_full();
}

// Length of the shortest full conquest by trying every sequence.
int brute_length(const ColoredGraph& g, NodeId v0, int max_len) {
  const int k = g.k();
  for (int len = 0; len <= max_len; ++len) {
    int combos = 1;
    for (int i = 0; i < len; ++i) combos *= k;
    for (int code = 0; code < combos; ++code) {
      ColorSequence seq;
      for (int i = 0, x = code; i < len; ++i, x /= k) seq.push_back(x % k);
      if (replays(g, v0, seq)) return len;
    }
  }
  return -1;
}

}  // namespace

TEST(Solitaire, ExactSmallExamples) {
  auto p3 = path_graph(2, {0, 1, 0});
  auto r = solve_exact(p3, 0);
  EXPECT_EQ(r.length, 2);
  EXPECT_EQ(r.sequence, (ColorSequence{1, 0}));

  auto single = make_graph(1, {0}, {});
  EXPECT_EQ(solve_exact(single, 0).length, 0);

  auto star = make_graph(3, {0, 1, 1, 2, 2}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  auto rs = solve_exact(star, 0);
  EXPECT_EQ(rs.length, 2);
  EXPECT_EQ(brute_length(star, 0, 2), 2);
}

TEST(Solitaire, GreedyExamples) {
  auto p3 = path_graph(2, {0, 1, 0});
  EXPECT_EQ(solve_greedy(p3, 0).sequence, (ColorSequence{1, 0}));
  auto star = make_graph(3, {0, 1, 1, 1, 2}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  EXPECT_EQ(solve_greedy(star, 0).sequence, (ColorSequence{1, 2}));
}

// Greedy grabs the two color-1 leaves first and pays a call for it.
TEST(Solitaire, GreedyCanLose) {
  // v0(0) with leaves p(1), q(1) and r(2); r carries leaves s(1), t(3)
  auto g = make_graph(4, {0, 1, 1, 2, 1, 3}, {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {3, 5}});
  auto greedy = solve_greedy(g, 0);
  auto exact = solve_exact(g, 0);
  EXPECT_EQ(greedy.sequence, (ColorSequence{1, 2, 1, 3}));
  EXPECT_EQ(exact.sequence, (ColorSequence{2, 1, 3}));
  EXPECT_EQ(brute_length(g, 0, 3), 3);
}

TEST(Solitaire, ExactAgainstBruteForce) {
  Rng rng(3);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = rng.between(1, 7), k = rng.between(2, 3);
    auto g = hbtest::random_connected(rng, n, k, 0.3);
    const auto v0 = static_cast<NodeId>(rng.below(g.size()));
    auto r = solve_exact(g, v0);
    EXPECT_TRUE(replays(g, v0, r.sequence));
    EXPECT_EQ(r.length, brute_length(g, v0, r.length));
    auto gr = solve_greedy(g, v0);
    EXPECT_TRUE(replays(g, v0, gr.sequence));
    EXPECT_LE(r.length, gr.length);
  }
}

TEST(Solitaire, ExactIsLexicographicallySmallest) {
  Rng rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = hbtest::random_connected(rng, rng.between(2, 6), 3, 0.3);
    auto r = solve_exact(g, 0);
    // every sequence of the same length that sorts before the answer fails
    int combos = 1;
    for (int i = 0; i < r.length; ++i) combos *= 3;
    for (int code = 0; code < combos; ++code) {
      ColorSequence seq(static_cast<std::size_t>(r.length));
      for (int i = r.length - 1, x = code; i >= 0; --i, x /= 3) seq[static_cast<std::size_t>(i)] = x % 3;
      if (seq == r.sequence) break;
      EXPECT_FALSE(replays(g, 0, seq));
    }
  }
}

TEST(Solitaire, EssentialLengthIdentity) {
  auto g = make_graph(4, {0, 1, 1, 2, 1, 3}, {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {3, 5}});
  auto r = solve_exact(g, 0);
  EXPECT_EQ(r.essential_length + classes_to_complete(g, 0), r.length);
  EXPECT_EQ(classes_to_complete(g, 0), 3);
}

TEST(Solitaire, BudgetExceededCarriesIncumbent) {
  Rng rng(2);
  auto g = hbtest::random_connected(rng, 10, 4, 0.1);
  try {
    solve_exact(g, 0, 3);
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_GT(e.frontier(), 0u);
    EXPECT_TRUE(replays(g, 0, e.incumbent()));
  }
}

TEST(Solitaire, RejectsDisconnectedAndBadStart) {
  auto g = make_graph(2, {0, 1, 0}, {{0, 1}});
  EXPECT_THROW(solve_exact(g, 0), InvalidInstance);
  EXPECT_THROW(solve_greedy(path_graph(2, {0, 1}), 5), InvalidInstance);
}

TEST(Solitaire, SplitExamples) {
  auto tri = make_graph(3, {0, 1, 2}, {{0, 1}, {0, 2}, {1, 2}});
  EXPECT_EQ(solve_split_bounded(tri, 0).length, 2);
  auto path = path_graph(3, {0, 1, 2, 0});
  EXPECT_THROW(solve_split_bounded(make_graph(2, {0, 1, 0, 1}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}), 0),
               InvalidInstance);
  // a path on four nodes is split: clique {1,2}
  EXPECT_EQ(solve_split_bounded(path, 0).length, solve_exact(path, 0).length);
  EXPECT_THROW(solve_split_bounded(path, 0, {0, 2}), InvalidInstance);
}

TEST(Solitaire, SplitMatchesExact) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int c = rng.between(1, 5), s = rng.between(0, 5), k = rng.between(2, 4);
    std::vector<Color> colors;
    for (int i = 0; i < c + s; ++i) colors.push_back(static_cast<Color>(rng.below(static_cast<std::uint64_t>(k))));
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < static_cast<NodeId>(c); ++u)
      for (NodeId v = u + 1; v < static_cast<NodeId>(c); ++v) edges.emplace_back(u, v);
    for (int i = 0; i < s; ++i) {
      const auto v = static_cast<NodeId>(c + i);
      edges.emplace_back(static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(c))), v);
      for (NodeId u = 0; u < static_cast<NodeId>(c); ++u)
        if (rng.chance(0.3) && std::find(edges.begin(), edges.end(), std::pair{u, v}) == edges.end())
          edges.emplace_back(u, v);
    }
    auto g = make_graph(k, colors, edges);
    std::vector<NodeId> clique;
    for (NodeId u = 0; u < static_cast<NodeId>(c); ++u) clique.push_back(u);
    const auto v0 = static_cast<NodeId>(rng.below(g.size()));
    auto split = solve_split_bounded(g, v0, clique);
    EXPECT_EQ(split.length, solve_exact(g, v0).length);
    EXPECT_TRUE(replays(g, v0, split.sequence));
    EXPECT_EQ(solve_split_bounded(g, v0).length, split.length);
  }
}

TEST(Solitaire, ResultJsonIsStable) {
  auto g = path_graph(2, {0, 1, 0});
  auto a = result_to_json(solve_exact(g, 0)).dump();
  auto b = result_to_json(solve_exact(g, 0)).dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("elapsed"), std::string::npos);
  EXPECT_NE(result_to_json(solve_exact(g, 0), true).dump().find("elapsed_ms"), std::string::npos);
}
