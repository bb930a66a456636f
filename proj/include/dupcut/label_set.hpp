#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <vector>

namespace dupcut {

/// Dense genome id, an index into a GenomeTable.
using GenomeId = std::int32_t;

/// Set of genome ids over a dense universe of size k. Word-parallel
/// intersection/union/subset tests are what every cut evaluation runs on.
using LabelSet = boost::dynamic_bitset<std::uint64_t>;

inline LabelSet make_label_set(std::size_t universe) { return LabelSet(universe); }

inline LabelSet label_set_of(std::size_t universe, std::initializer_list<GenomeId> ids) {
  LabelSet s(universe);
  for (GenomeId g : ids) s.set(static_cast<std::size_t>(g));
  return s;
}

inline std::vector<GenomeId> set_members(const LabelSet& s) {
  std::vector<GenomeId> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != LabelSet::npos; i = s.find_next(i))
    out.push_back(static_cast<GenomeId>(i));
  return out;
}

/// True iff `s` has members on both sides of the (x, rest) split, i.e. it
/// meets `x` and is not contained in it.
inline bool straddles(const LabelSet& s, const LabelSet& x) {
  return s.intersects(x) && !s.is_subset_of(x);
}

/// Lexicographic order on the ascending member sequences, the tie-break order
/// used by the brute-force minimizers.
inline bool member_lex_less(const LabelSet& a, const LabelSet& b) {
  auto i = a.find_first();
  auto j = b.find_first();
  while (i != LabelSet::npos && j != LabelSet::npos) {
    if (i != j) return i < j;
    i = a.find_next(i);
    j = b.find_next(j);
  }
  return i == LabelSet::npos && j != LabelSet::npos;
}

}  // namespace dupcut
