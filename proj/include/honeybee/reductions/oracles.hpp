#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "honeybee/error.hpp"
#include "honeybee/reductions/common.hpp"

namespace honeybee::reductions {

inline bool is_subsequence(std::string_view sub, std::string_view sup) {
  std::size_t i = 0;
  for (char c : sup)
    if (i < sub.size() && sub[i] == c) ++i;
  return i == sub.size();
}

inline bool is_common_supersequence(std::string_view sup, const std::vector<std::string>& seqs) {
  return std::all_of(seqs.begin(), seqs.end(), [&](const std::string& s) { return is_subsequence(s, sup); });
}

struct ScsResult {
  int length = 0;
  std::string witness;  // lexicographically smallest among the shortest
};

// Shortest common supersequence by DP over tuples of positions. The alphabet
// is whatever characters occur.
inline ScsResult brute_scs(const std::vector<std::string>& seqs) {
  if (seqs.size() > 4) throw SizeGuardExceeded("brute_scs handles at most 4 sequences");
  for (const auto& s : seqs)
    if (s.size() > 10) throw SizeGuardExceeded("brute_scs handles sequences of length at most 10");
  std::string alphabet;
  for (const auto& s : seqs) alphabet += s;
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());

  const std::size_t s = seqs.size();
  std::vector<std::size_t> radix(s), stride(s);
  std::size_t states = 1;
  for (std::size_t i = 0; i < s; ++i) {
    radix[i] = seqs[i].size() + 1;
    stride[i] = states;
    states *= radix[i];
  }
  auto pos = [&](std::size_t code, std::size_t i) { return code / stride[i] % radix[i]; };
  auto step = [&](std::size_t code, char c) {
    std::size_t next = code;
    for (std::size_t i = 0; i < s; ++i) {
      const auto p = pos(code, i);
      if (p < seqs[i].size() && seqs[i][p] == c) next += stride[i];
    }
    return next;
  };

  // advancing only raises the code, so a downward sweep sees successors first
  std::vector<int> rest(states, 0);
  for (std::size_t code = states; code-- > 0;) {
    int best = std::numeric_limits<int>::max();
    for (char c : alphabet) {
      const auto next = step(code, c);
      if (next != code) best = std::min(best, 1 + rest[next]);
    }
    rest[code] = best == std::numeric_limits<int>::max() ? 0 : best;
  }

  ScsResult r;
  r.length = rest[0];
  for (std::size_t code = 0; rest[code] > 0;) {
    for (char c : alphabet) {
      const auto next = step(code, c);
      if (next != code && rest[next] == rest[code] - 1) {
        r.witness += c;
        code = next;
        break;
      }
    }
  }
  return r;
}

inline bool is_acyclic(const Digraph& d, std::uint32_t removed) {
  const auto n = d.nodes.size();
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> out(n);
  for (auto [x, y] : d.arcs)
    if (!(removed >> x & 1) && !(removed >> y & 1)) {
      out[static_cast<std::size_t>(x)].push_back(y);
      ++indeg[static_cast<std::size_t>(y)];
    }
  std::vector<int> ready;
  std::size_t alive = 0;
  for (std::size_t v = 0; v < n; ++v)
    if (!(removed >> v & 1)) {
      ++alive;
      if (indeg[v] == 0) ready.push_back(static_cast<int>(v));
    }
  std::size_t done = 0;
  while (!ready.empty()) {
    const int v = ready.back();
    ready.pop_back();
    ++done;
    for (int w : out[static_cast<std::size_t>(v)])
      if (--indeg[static_cast<std::size_t>(w)] == 0) ready.push_back(w);
  }
  return done == alive;
}

struct FvsResult {
  int size = 0;
  std::vector<int> witness;  // node indices, ascending
};

// Minimum feedback vertex set by subsets in increasing size; within a size,
// the numerically smallest mask wins.
inline FvsResult brute_fvs(const Digraph& d) {
  const auto n = d.nodes.size();
  if (n > 12) throw SizeGuardExceeded("brute_fvs handles at most 12 nodes");
  for (int size = 0; size <= static_cast<int>(n); ++size) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) != size || !is_acyclic(d, mask)) continue;
      FvsResult r;
      r.size = size;
      for (std::size_t v = 0; v < n; ++v)
        if (mask >> v & 1) r.witness.push_back(static_cast<int>(v));
      return r;
    }
  }
  return {};
}

// Truth of E x1 A x2 ... over the clauses, by full expansion.
inline bool qbf_value(const QbfFormula& f) {
  if (f.vars > 24) throw SizeGuardExceeded("qbf_value handles at most 24 variables");
  std::vector<int> value(static_cast<std::size_t>(f.vars) + 1, 0);
  auto satisfied = [&] {
    for (const auto& c : f.clauses) {
      bool any = false;
      for (int lit : c) any = any || (lit > 0 ? value[lit] == 1 : value[-lit] == 0);
      if (!any) return false;
    }
    return true;
  };
  auto go = [&](auto&& self, int v) -> bool {
    if (v > f.vars) return satisfied();
    const bool exists = v % 2 == 1;
    for (int b = 0; b < 2; ++b) {
      value[v] = b;
      const bool r = self(self, v + 1);
      if (exists && r) return true;
      if (!exists && !r) return false;
    }
    return !exists;
  };
  return go(go, 1);
}

}  // namespace honeybee::reductions
