#pragma once

#include "dupcut/forest.hpp"

#include <string>
#include <string_view>

namespace dupcut {

// Grammar:  tree := subtree ';'
//           subtree := leaf | '(' subtree (',' subtree)+ ')' [name] [':' number]
// Names match [A-Za-z0-9_.-]+. Branch lengths and internal-node names are
// parsed and discarded; bracketed comments [...] are skipped like whitespace.
// Gene trees must be binary; species trees may be non-binary.

/// One or more semicolon-terminated trees. Genome ids are assigned in
/// first-appearance order; vertex labels 1..m in pre-order across trees.
GeneForest parse_newick_forest(std::string_view text);

/// A single species tree; every leaf name must be unique.
SpeciesTree parse_newick_species(std::string_view text);

std::string to_newick(const GeneTree& tree, const GenomeTable& genomes);

/// One line per tree. Throws std::invalid_argument on an empty forest.
std::string to_newick(const GeneForest& forest);

std::string to_newick(const SpeciesTree& species);

}  // namespace dupcut
