#pragma once

#include "dupcut/forest.hpp"
#include "dupcut/sfm.hpp"

#include <string>
#include <vector>

namespace dupcut {

struct LabeledEdge {
  GenomeId u, v;  // u < v
  int label;

  auto operator<=>(const LabeledEdge&) const = default;
};

/// Multigraph on the genomes whose edges carry internal-vertex labels. Stored
/// as the generating hyperedges (the oracles run one straddle test per set)
/// plus the deduplicated pair edges for the literal-edge views.
struct EdgeLabeledMultigraph {
  LabelSet vertices;                 // the forest ground set
  std::vector<Hyperedge> hyperedges; // grouped by label, label-ascending
  std::vector<LabeledEdge> edges;    // distinct (u,v,label), sorted
  std::vector<int> labels;           // distinct labels with at least one edge

  std::size_t universe() const { return vertices.size(); }
};

struct CutEvaluation {
  std::vector<int> crossing_labels;  // sorted
  int label_size = 0;
};

/// Per internal vertex labeled a: all pairs within each child label set,
/// labeled a. Cherries contribute nothing.
EdgeLabeledMultigraph build_graph_h(const GeneForest& forest);

/// Variant whose cut-set function is submodular: an apparent duplication
/// contributes its two child sets, any other vertex the single set L(x)
/// (which subsumes the child pairs). With `literal_hyperedges` the child sets
/// are kept alongside L(x) so the edge set can be checked against the
/// pairwise definition; the edges are identical either way.
EdgeLabeledMultigraph build_graph_i(const GeneForest& forest, bool literal_hyperedges = false);

/// Labels of the edges crossing the bipartition, evaluated on the literal
/// pair-edge list.
CutEvaluation cut_label_size(const EdgeLabeledMultigraph& g, const Bipartition& b);

/// Cut-set value of H(F) at x_set: the number of internal vertices with a
/// child label set straddling (x_set, ground - x_set). Equals the label-size
/// of the induced edge-cut of H(F); 0 on the empty set and the full ground.
int cut_value_h(const GeneForest& forest, const LabelSet& x_set);

/// Cut-set value of I(F) at x_set: the number of internal vertices x with
/// L(x) straddling. For apparent duplications this single test matches the
/// two-child-set definition: a shared genome lies on one side, so a straddling
/// L(x) forces a straddling child.
int cut_value_i(const GeneForest& forest, const LabelSet& x_set);

/// Components of the graph's vertex set, ignoring labels.
Partition connected_components(const EdgeLabeledMultigraph& g);

/// Deterministic DOT rendering: vertices sorted by name, edges by
/// (name(u), name(v), label).
std::string export_dot(const EdgeLabeledMultigraph& g, const GenomeTable& genomes);

/// A forest cut-set function packaged for the minimizers: the oracle runs on
/// re-indexed ground members 0..|L(F)|-1.
struct ForestOracle {
  SetFunctionOracle oracle;
  std::vector<GenomeId> genome_of_index;

  /// Translates an oracle-universe subset back to genome ids.
  LabelSet to_genomes(const LabelSet& x, std::size_t table_universe) const;
  /// Translates a genome subset (within ground) into the oracle universe.
  LabelSet from_genomes(const LabelSet& genome_set) const;
};

ForestOracle make_h_oracle(const GeneForest& forest);
ForestOracle make_i_oracle(const GeneForest& forest);

}  // namespace dupcut
