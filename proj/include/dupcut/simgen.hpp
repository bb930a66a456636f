#pragma once

#include "dupcut/forest.hpp"

#include <cstdint>

namespace dupcut {

/// Duplication-loss simulation parameters. Genome names are g0..g{k-1},
/// zero-padded to a fixed width.
struct SimConfig {
  int k = 4;
  int n_families = 10;
  double p_dup = 0.1;   // per-lineage per-branch duplication probability
  double p_loss = 0.1;  // per-lineage per-branch loss probability
  std::uint64_t seed = 0;
};

struct SimReport {
  int planted_root_duplications = 0;  // duplication events on the stem branch, summed
  int surviving_families = 0;         // families that kept >= 2 leaves
};

/// Uniform random rooted binary topology over k labeled leaves: leaves are
/// attached one by one to an edge drawn uniformly (the stem above the root
/// included), which weights every topology equally. Deterministic per (k, seed);
/// the generator is std::mt19937_64 throughout this module.
SpeciesTree random_species_tree(int k, std::uint64_t seed);

/// Per family, one lineage enters above the species root; on every branch a
/// lineage duplicates at most once (single Bernoulli trial) and each resulting
/// lineage is lost independently; at a speciation every survivor continues
/// into each child. Unary pass-throughs are suppressed; families with fewer
/// than two surviving leaves are dropped and counted. Requires a binary
/// species tree. Families draw sub-seeds from (seed, family index) and are
/// independent.
std::pair<GeneForest, SimReport> random_gene_forest(const SpeciesTree& species,
                                                    const SimConfig& cfg);

/// Stress corpus: n_trees uniform topologies with leaf labels i.i.d. uniform
/// over k genomes. The realized ground set may be a proper subset of the
/// table.
GeneForest random_forest_uniform(int k, int n_trees, int leaves_per_tree, std::uint64_t seed);

/// Fresh table with names g0..g{k-1}, zero-padded so name order matches id
/// order.
GenomeTablePtr default_genome_table(int k);

}  // namespace dupcut
