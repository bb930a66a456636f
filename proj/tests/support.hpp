#pragma once

#include "doctest.h"

#include "dupcut/forest.hpp"
#include "dupcut/newick.hpp"
#include "dupcut/rng.hpp"
#include "dupcut/simgen.hpp"

#include "tree_enum.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace dupcut::test {

inline GeneForest forest_of(const std::string& newick) { return parse_newick_forest(newick); }

inline LabelSet genomes(const GeneForest& f, std::initializer_list<const char*> names) {
  LabelSet s(f.universe());
  for (const char* n : names) {
    const GenomeId g = f.genomes->find(n);
    REQUIRE(g >= 0);
    s.set(static_cast<std::size_t>(g));
  }
  return s;
}

inline Bipartition bip(const GeneForest& f, std::initializer_list<const char*> left,
                       std::initializer_list<const char*> right) {
  return Bipartition(genomes(f, left), genomes(f, right));
}

/// Independent duplication count preceding a bipartition: the literal pair
/// condition, scanning every (s, t) in left x right per vertex. Slow on
/// purpose; the production path never enumerates pairs.
inline int d1_pairs_oracle(const GeneForest& f, const Bipartition& b) {
  const std::vector<GenomeId> ls = set_members(b.left());
  const std::vector<GenomeId> rs = set_members(b.right());
  int count = 0;
  for (const GeneTree& t : f.trees)
    for (const GeneNode& n : t.arena) {
      if (n.is_leaf()) continue;
      bool hit = false;
      for (int c : n.children) {
        const LabelSet& sub = t.arena[static_cast<std::size_t>(c)].labels;
        for (GenomeId s : ls)
          for (GenomeId u : rs)
            if (sub.test(static_cast<std::size_t>(s)) && sub.test(static_cast<std::size_t>(u)))
              hit = true;
      }
      if (hit) ++count;
    }
  return count;
}

/// All bipartitions of the forest ground set with the smallest genome fixed
/// on the left.
inline std::vector<Bipartition> all_bipartitions(const GeneForest& f) {
  const std::vector<GenomeId> members = set_members(f.ground);
  std::vector<Bipartition> out;
  const std::uint64_t total = (std::uint64_t{1} << (members.size() - 1)) - 1;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    LabelSet left(f.universe());
    left.set(static_cast<std::size_t>(members[0]));
    for (std::size_t i = 1; i < members.size(); ++i)
      if ((mask >> (i - 1)) & 1u) left.set(static_cast<std::size_t>(members[i]));
    out.emplace_back(left, f.ground - left);
  }
  return out;
}

/// Small random forest for property sweeps; regenerates until the ground set
/// has at least two genomes.
inline GeneForest random_small_forest(std::uint64_t seed, int max_k = 8, int max_trees = 4,
                                      int max_leaves = 6) {
  std::mt19937_64 rng(mix_seed(seed, 0x5eedULL));
  for (;;) {
    const int k = 2 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_k - 1)));
    const int trees =
        1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_trees)));
    const int leaves =
        2 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_leaves - 1)));
    GeneForest f = random_forest_uniform(k, trees, leaves, rng());
    if (f.ground.count() >= 2) return f;
  }
}

}  // namespace dupcut::test
