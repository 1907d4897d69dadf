#pragma once

#include <string>

#include "honeybee/reductions/common.hpp"
#include "honeybee/reductions/oracles.hpp"

namespace honeybee::reductions {

// Every 0 becomes 0 then 2.
inline std::string scs_image(const std::string& tau) {
  std::string out;
  for (char c : tau) {
    out += c;
    if (c == '0') out += '2';
  }
  return out;
}

// A length-t binary supersequence with at least two 1s has an image of
// length at most 2t - 2, which is the bound handed on.
inline Sequences scs_to_mscs(const Sequences& b) {
  validate_scs(b);
  Sequences m;
  for (const auto& s : b.seqs) m.seqs.push_back(scs_image(s));
  m.t = 2 * b.t - 2;
  validate_mscs(m);
  return m;
}

// Spider: root of color 2 with one path per sequence, node j colored by
// element j.
inline ReductionArtifact gen_mscs_tree(const Sequences& m) {
  validate_mscs(m);
  Builder b;
  const NodeId root = b.add("v0", 2, 1, "root");
  for (std::size_t i = 0; i < m.seqs.size(); ++i) {
    NodeId prev = root;
    for (std::size_t j = 0; j < m.seqs[i].size(); ++j) {
      const auto tag = std::to_string(i + 1);
      const NodeId v = b.add("s" + tag + "_" + std::to_string(j + 1), m.seqs[i][j] - '0', 1, "sequence:" + tag);
      b.edge(prev, v);
      prev = v;
    }
  }
  ReductionArtifact a;
  a.instance = make_instance(b.graph(3));
  a.instance.start = root;
  a.bound = m.t;
  a.construction = "mscs-tree";
  a.relation = "a common supersequence of length t exists iff the root conquers the tree within b calls; "
               "the optimum length equals the shortest common supersequence";
  a.roles = b.roles();
  a.meta = {{"sequences", m.seqs.size()}, {"t", m.t}};
  return a;
}

// A conquering sequence read back as a word over 0, 1, 2.
inline std::string sequence_word(const ColorSequence& seq) {
  std::string w;
  for (Color c : seq) w += static_cast<char>('0' + c);
  return w;
}

}  // namespace honeybee::reductions
