#include "doctest.h"
#include "support.hpp"

#include "dupcut/newick.hpp"
#include "dupcut/simgen.hpp"

using namespace dupcut;
using namespace dupcut::test;

TEST_CASE("random species tree: shape invariants and determinism") {
  SpeciesTree cherry = random_species_tree(2, 9);
  CHECK(cherry.arena.size() == 3);
  CHECK(to_newick(cherry) == "(g0,g1);");

  CHECK(to_newick(random_species_tree(3, 5)) == to_newick(random_species_tree(3, 5)));

  SpeciesTree five = random_species_tree(5, 123);
  int internal = 0;
  for (const SpeciesNode& n : five.arena) internal += !n.is_leaf();
  CHECK(internal == 4);
  CHECK(five.is_binary());
  CHECK(five.ground.count() == 5);
}

TEST_CASE("simulated families: no events means the species topology") {
  SpeciesTree s = random_species_tree(6, 77);
  auto [forest, report] = random_gene_forest(s, SimConfig{6, 5, 0.0, 0.0, 1});
  CHECK(report.surviving_families == 5);
  CHECK(report.planted_root_duplications == 0);
  REQUIRE(forest.trees.size() == 5);
  const std::string expected = to_newick(s);
  for (const GeneTree& t : forest.trees) CHECK(to_newick(t, *forest.genomes) == expected);
}

TEST_CASE("simulated families: total loss") {
  SpeciesTree s = random_species_tree(4, 3);
  auto [forest, report] = random_gene_forest(s, SimConfig{4, 8, 0.0, 1.0, 2});
  CHECK(report.surviving_families == 0);
  CHECK(forest.trees.empty());
}

TEST_CASE("simulated families: no duplication events, no apparent duplications") {
  SpeciesTree s = random_species_tree(5, 11);
  auto [forest, report] = random_gene_forest(s, SimConfig{5, 40, 0.0, 0.4, 17});
  for (int label = 1; label <= forest.internal_count; ++label)
    CHECK_FALSE(is_apparent_duplication(forest, label));
  CHECK(report.surviving_families == static_cast<int>(forest.trees.size()));
}

TEST_CASE("simulated families are deterministic per seed") {
  SpeciesTree s = random_species_tree(5, 19);
  auto [f1, r1] = random_gene_forest(s, SimConfig{5, 10, 0.3, 0.2, 99});
  auto [f2, r2] = random_gene_forest(s, SimConfig{5, 10, 0.3, 0.2, 99});
  REQUIRE(!f1.trees.empty());
  CHECK(to_newick(f1) == to_newick(f2));
  CHECK(r1.planted_root_duplications == r2.planted_root_duplications);
}

TEST_CASE("uniform forest: cherries, determinism, repeated labels") {
  GeneForest cherries = random_forest_uniform(3, 4, 2, 8);
  for (const GeneTree& t : cherries.trees) CHECK(t.arena.size() == 3);

  CHECK(to_newick(random_forest_uniform(4, 3, 5, 21)) ==
        to_newick(random_forest_uniform(4, 3, 5, 21)));

  // Two genomes, four leaves per tree: every tree repeats a label, and over
  // 100 trees some repeat inside a sibling pair. Count frozen after one run.
  GeneForest crowded = random_forest_uniform(2, 100, 4, 31);
  int apparent = 0;
  for (int label = 1; label <= crowded.internal_count; ++label)
    apparent += is_apparent_duplication(crowded, label);
  CHECK(apparent > 0);
  CHECK(apparent == 202);
}

TEST_CASE("without duplications the species root split costs nothing") {
  for (std::uint64_t seed = 50; seed < 58; ++seed) {
    SpeciesTree s = random_species_tree(6, seed);
    auto [forest, report] = random_gene_forest(s, SimConfig{6, 12, 0.0, 0.3, seed * 3 + 1});
    if (forest.trees.empty()) continue;
    const SpeciesNode& root = s.arena[static_cast<std::size_t>(s.root)];
    const LabelSet left =
        s.arena[static_cast<std::size_t>(root.children[0])].labels & forest.ground;
    const LabelSet right =
        s.arena[static_cast<std::size_t>(root.children[1])].labels & forest.ground;
    if (left.none() || right.none()) continue;
    CHECK(d1_cost(forest, Bipartition(left, right)) == 0);
  }
}

TEST_CASE("generated forests satisfy the tree invariants") {
  GeneForest f = random_forest_uniform(6, 8, 7, 5);
  CHECK(f.internal_count == 8 * 6);
  for (const GeneTree& t : f.trees)
    for (const GeneNode& n : t.arena) {
      if (n.is_leaf()) continue;
      CHECK(n.labels == (t.arena[static_cast<std::size_t>(n.children[0])].labels |
                         t.arena[static_cast<std::size_t>(n.children[1])].labels));
    }
}
