#pragma once

#include "dupcut/cutgraph.hpp"
#include "dupcut/forest.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dupcut {

struct SolverLimits {
  int exact_max_k = 20;       // bipartition enumeration
  int exact_hard_cap = 22;    // exact_max_k may be raised up to this
  int all_optimal_max_k = 16; // enumerations that collect every optimum
  int mdpp_max_m = 64;        // prefix search
  int threads = 1;            // exact enumerations only
};

/// Approximate first speciation from minimizing the submodular relaxation.
struct ApproxResult {
  Bipartition bipartition;
  std::int64_t relaxed_value = 0;   // c = min of the I(F) cut-set function
  std::int64_t realized_cost = 0;   // d1 of the returned bipartition
  std::uint64_t oracle_evaluations = 0;
  std::optional<int> bound_certificate;  // exact d, when certified
};

struct ExactResult {
  Bipartition bipartition;
  int cost = 0;
  std::optional<std::vector<Bipartition>> optimal_cuts;
};

struct PrefixResult {
  Prefix prefix;
  int size = 0;
  Partition induced_partition;
};

enum class GreedyMethod { kApprox, kExact };

struct GreedyStep {
  LabelSet genomes;  // ground set the step split
  Bipartition bipartition;
  int d1 = 0;
  bool unconstrained = false;  // no informative vertex; caterpillar emitted
};

struct GreedyResult {
  SpeciesTree tree;
  std::vector<GreedyStep> steps;
  int total_duplications = 0;
};

/// Minimizes the I(F) cut-set function (pendant pairs) and returns the induced
/// bipartition together with its real d1 cost, which never exceeds the relaxed
/// value. A disconnected I(F) short-circuits to a zero-cost grouping of the
/// components, balanced greedily in component order.
ApproxResult approx_mdbp(const GeneForest& forest);

/// Exhaustive minimum-d1 bipartition: sweeps the 2^(k-1)-1 bipartitions that
/// keep the smallest ground genome on the left. Ties resolve to the smallest
/// sorted left-side name list. With collect_all, also returns every optimal
/// bipartition in sweep order. Sharded across OpenMP threads when
/// limits.threads > 1; results are identical at any thread count.
ExactResult exact_mdbp(const GeneForest& forest, bool collect_all = false,
                       const SolverLimits& limits = {});

/// Smallest prefix whose deletion splits the label-cut graph, found by
/// iterative deepening over ancestor-closed vertex sets. Independent of the
/// bipartition sweep so the two sides of the cut/prefix duality can be
/// compared as separate computations.
PrefixResult exact_mdpp(const GeneForest& forest, const SolverLimits& limits = {});

/// Meet of all optimal bipartitions: genomes share a part iff no optimal
/// bipartition separates them.
Partition all_optimal_bipartition_partition(const GeneForest& forest,
                                            const SolverLimits& limits = {});

/// Meet of the partitions induced by all minimum-size prefixes.
Partition all_optimal_prefix_partition(const GeneForest& forest, const SolverLimits& limits = {});

/// Does this labeled edge of H(F) cross some minimum-label-size cut?
bool edge_in_some_min_cut(const GeneForest& forest, GenomeId u, GenomeId v, int label,
                          const SolverLimits& limits = {});

/// Does this vertex belong to some minimum-size prefix with a split partition?
bool vertex_in_some_min_prefix(const GeneForest& forest, int vertex_label,
                               const SolverLimits& limits = {});

/// Recursive first-speciation heuristic: split, recurse, reassemble. Steps
/// with no informative vertex emit a name-sorted caterpillar and are flagged.
GreedyResult greedy_species_tree(const GeneForest& forest, GreedyMethod method,
                                 const SolverLimits& limits = {});

}  // namespace dupcut
