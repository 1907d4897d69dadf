#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "honeybee/error.hpp"
#include "honeybee/graph.hpp"
#include "honeybee/instance_io.hpp"
#include "honeybee/rng.hpp"

namespace honeybee {

// Axial hex coordinate.
struct Axial {
  int q = 0;
  int r = 0;
  friend bool operator==(const Axial&, const Axial&) = default;
  friend auto operator<=>(const Axial& a, const Axial& b) {
    if (a.r != b.r) return a.r <=> b.r;
    return a.q <=> b.q;
  }
};

inline constexpr std::array<Axial, 6> kHexDirections{{{+1, 0}, {-1, 0}, {0, +1}, {0, -1}, {+1, -1}, {-1, +1}}};

struct HexCell {
  Axial at;
  Color color = 0;
};

struct HexBoard {
  int k = 0;
  std::vector<HexCell> cells;  // sorted row-major by (r, q)
  Axial start_a;
  Axial start_b;
  bool symmetric = false;

  const HexCell* find(Axial a) const {
    auto it = std::lower_bound(cells.begin(), cells.end(), a,
                               [](const HexCell& c, const Axial& x) { return c.at < x; });
    return (it != cells.end() && it->at == a) ? &*it : nullptr;
  }
};

struct BoardParams {
  int rows = 5;
  int cols = 5;
  int k = 4;
  std::uint64_t seed = 0;
  bool symmetric = false;
  double holes = 0.0;
  bool require_odd = false;  // two-player boards need an odd cell count
};

namespace detail {

inline bool cells_connected(const std::vector<Axial>& cells) {
  if (cells.empty()) return false;
  std::vector<char> seen(cells.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  auto index_of = [&](Axial a) -> std::ptrdiff_t {
    auto it = std::lower_bound(cells.begin(), cells.end(), a);
    return (it != cells.end() && *it == a) ? it - cells.begin() : -1;
  };
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    for (auto d : kHexDirections) {
      auto j = index_of({cells[i].q + d.q, cells[i].r + d.r});
      if (j >= 0 && !seen[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = 1;
        ++reached;
        stack.push_back(static_cast<std::size_t>(j));
      }
    }
  }
  return reached == cells.size();
}

}  // namespace detail

// Point reflection through the centre of a rows x cols axial parallelogram;
// preserves hex adjacency because the direction set is closed under negation.
inline Axial rotate_half_turn(Axial a, int rows, int cols) { return {cols - 1 - a.q, rows - 1 - a.r}; }

inline bool is_board_symmetric(const HexBoard& b, int rows, int cols) {
  for (const auto& c : b.cells) {
    const auto* mate = b.find(rotate_half_turn(c.at, rows, cols));
    if (!mate || mate->color != c.color) return false;
  }
  return true;
}

inline HexBoard random_board(const BoardParams& p) {
  if (p.rows < 1 || p.cols < 1) throw InvalidInstance("rows and cols must be at least 1");
  if (p.k < 2 || p.k > 32) throw InvalidInstance("k must be in 2..32");
  if (!(p.holes >= 0.0 && p.holes < 0.5)) throw InvalidInstance("holes must be in [0, 0.5)");
  if (p.rows * p.cols < 2) throw InvalidInstance("impossible geometry: board needs two distinct start cells");

  const Axial start_a{0, 0};
  const Axial start_b{p.cols - 1, p.rows - 1};
  constexpr int kMaxAttempts = 256;

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Rng rng(mix_seed(p.seed, static_cast<std::uint64_t>(attempt)));
    std::vector<Axial> present;
    for (int r = 0; r < p.rows; ++r) {
      for (int q = 0; q < p.cols; ++q) {
        const Axial a{q, r};
        if (a == start_a || a == start_b) {
          present.push_back(a);
          continue;
        }
        const Axial mate = rotate_half_turn(a, p.rows, p.cols);
        if (p.symmetric && mate < a) {
          // decided together with its representative
          if (std::binary_search(present.begin(), present.end(), mate)) present.push_back(a);
          continue;
        }
        if (!rng.chance(p.holes)) present.push_back(a);
      }
    }
    // row-major order is the Axial ordering, so `present` is sorted and a
    // mirrored cell's representative has always been decided first
    if (!detail::cells_connected(present)) continue;
    if (p.require_odd && present.size() % 2 == 0) continue;

    HexBoard board;
    board.k = p.k;
    board.start_a = start_a;
    board.start_b = start_b;
    board.symmetric = p.symmetric;
    std::map<Axial, Color> colors;
    for (const auto& a : present) {
      const Axial mate = rotate_half_turn(a, p.rows, p.cols);
      if (p.symmetric && mate < a && colors.count(mate)) {
        colors[a] = colors[mate];
      } else {
        colors[a] = static_cast<Color>(rng.below(static_cast<std::uint64_t>(p.k)));
      }
    }
    for (const auto& a : present) board.cells.push_back({a, colors[a]});
    return board;
  }
  throw InvalidInstance("impossible geometry: no connected board after " + std::to_string(kMaxAttempts) +
                        " attempts");
}

inline Instance hex_to_graph(const HexBoard& b) {
  std::vector<NodeSpec> nodes;
  nodes.reserve(b.cells.size());
  for (const auto& c : b.cells) nodes.push_back({std::to_string(c.at.q) + "," + std::to_string(c.at.r), c.color, 1});
  auto index_of = [&](Axial a) -> std::ptrdiff_t {
    auto it = std::lower_bound(b.cells.begin(), b.cells.end(), a,
                               [](const HexCell& c, const Axial& x) { return c.at < x; });
    return (it != b.cells.end() && it->at == a) ? it - b.cells.begin() : -1;
  };
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t i = 0; i < b.cells.size(); ++i) {
    for (auto d : kHexDirections) {
      auto j = index_of({b.cells[i].at.q + d.q, b.cells[i].at.r + d.r});
      if (j > static_cast<std::ptrdiff_t>(i)) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    }
  }
  Instance inst = make_instance(ColoredGraph(b.k, std::move(nodes), edges));
  if (auto i = index_of(b.start_a); i >= 0) inst.start_a = static_cast<NodeId>(i);
  if (auto i = index_of(b.start_b); i >= 0) inst.start_b = static_cast<NodeId>(i);
  return inst;
}

inline json board_to_json(const HexBoard& b) {
  json root;
  root["k"] = b.k;
  json cells = json::array();
  for (const auto& c : b.cells) cells.push_back({{"q", c.at.q}, {"r", c.at.r}, {"color", c.color}});
  root["cells"] = std::move(cells);
  root["start_a"] = json::array({b.start_a.q, b.start_a.r});
  root["start_b"] = json::array({b.start_b.q, b.start_b.r});
  return root;
}

inline std::string write_board(const HexBoard& b) { return board_to_json(b).dump(2) + "\n"; }

inline HexBoard board_from_json(const json& root) {
  using namespace detail;
  require_object(root, "");
  reject_unknown(root, "", {"k", "cells", "start_a", "start_b"});
  HexBoard b;
  const auto k = as_int(required(root, "", "k"), "/k");
  if (k < 1 || k > 32) throw ParseError("/k", "k must be in 1..32");
  b.k = static_cast<int>(k);
  const auto& cells = as_array(required(root, "", "cells"), "/cells");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string where = "/cells/" + std::to_string(i);
    require_object(cells[i], where);
    reject_unknown(cells[i], where, {"q", "r", "color"});
    HexCell c;
    c.at.q = static_cast<int>(as_int(required(cells[i], where, "q"), where + "/q"));
    c.at.r = static_cast<int>(as_int(required(cells[i], where, "r"), where + "/r"));
    const auto color = as_int(required(cells[i], where, "color"), where + "/color");
    if (color < 0 || color >= k) throw ParseError(where + "/color", "color out of range");
    c.color = static_cast<Color>(color);
    b.cells.push_back(c);
  }
  if (b.cells.empty()) throw ParseError("/cells", "board has no cells");
  std::sort(b.cells.begin(), b.cells.end(), [](const HexCell& x, const HexCell& y) { return x.at < y.at; });
  for (std::size_t i = 1; i < b.cells.size(); ++i)
    if (b.cells[i].at == b.cells[i - 1].at) throw ParseError("/cells", "duplicate cell");
  auto read_axial = [&](const char* key) {
    const std::string where = std::string("/") + key;
    const auto& j = required(root, "", key);
    if (!j.is_array() || j.size() != 2) throw ParseError(where, "expected [q, r]");
    Axial a{static_cast<int>(as_int(j[0], where + "/0")), static_cast<int>(as_int(j[1], where + "/1"))};
    if (!b.find(a)) throw ParseError(where, "start cell is not on the board");
    return a;
  };
  b.start_a = read_axial("start_a");
  b.start_b = read_axial("start_b");
  if (b.start_a == b.start_b) throw ParseError("/start_b", "start cells must differ");
  std::vector<Axial> at;
  for (const auto& c : b.cells) at.push_back(c.at);
  if (!cells_connected(at)) throw ParseError("/cells", "board is disconnected");
  return b;
}

inline HexBoard load_board(std::string_view text) { return board_from_json(detail::parse_json(text)); }

}  // namespace honeybee
