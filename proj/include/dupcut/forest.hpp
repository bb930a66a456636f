#pragma once

#include "dupcut/errors.hpp"
#include "dupcut/label_set.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dupcut {

/// Bijective mapping between genome name strings and dense ids 0..k-1.
class GenomeTable {
 public:
  GenomeTable() = default;

  /// Returns the id of `name`, adding it if unseen. Names must match
  /// [A-Za-z0-9_.-]+; the caller (the parser) enforces the alphabet.
  GenomeId intern(std::string_view name);

  /// Id of `name`, or -1 if absent.
  GenomeId find(std::string_view name) const;

  const std::string& name(GenomeId id) const { return names_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
};

using GenomeTablePtr = std::shared_ptr<const GenomeTable>;

constexpr int kNoNode = -1;
constexpr int kNoLabel = 0;  // internal vertex labels are 1..m

struct GeneNode {
  int parent = kNoNode;
  int children[2] = {kNoNode, kNoNode};  // both set or both unset
  GenomeId leaf_genome = -1;             // valid iff leaf
  int vertex_label = kNoLabel;           // valid iff internal, unique across the forest
  LabelSet labels;                       // L(x), cached

  bool is_leaf() const { return children[0] == kNoNode; }
};

struct GeneTree {
  int root = kNoNode;
  std::vector<GeneNode> arena;
};

/// Locates an internal vertex by its forest-wide label.
struct VertexRef {
  int tree = -1;
  int node = kNoNode;
};

/// A set of binary leaf-labeled trees over a shared genome table.
/// Immutable after construction.
struct GeneForest {
  std::vector<GeneTree> trees;
  GenomeTablePtr genomes;
  int internal_count = 0;  // m
  LabelSet ground;         // L(F), a subset of the table universe
  std::vector<VertexRef> vertex_of_label;  // index 1..m

  std::size_t universe() const { return genomes->size(); }
  const GeneNode& node_of(int vertex_label) const;
};

struct SpeciesNode {
  int parent = kNoNode;
  std::vector<int> children;  // >= 2 for internal nodes
  GenomeId leaf_genome = -1;  // valid iff leaf
  LabelSet labels;
  int depth = 0;

  bool is_leaf() const { return children.empty(); }
};

/// Rooted species tree, possibly non-binary; one leaf per genome in its
/// ground set. Immutable after construction.
struct SpeciesTree {
  int root = kNoNode;
  std::vector<SpeciesNode> arena;
  GenomeTablePtr genomes;
  LabelSet ground;
  std::vector<int> leaf_of_genome;  // genome id -> node, or kNoNode

  std::size_t universe() const { return genomes->size(); }
  bool is_binary() const;
};

/// Ordered pair of disjoint nonempty genome sets covering a ground set;
/// models a first speciation.
class Bipartition {
 public:
  Bipartition(LabelSet left, LabelSet right);

  const LabelSet& left() const { return left_; }
  const LabelSet& right() const { return right_; }
  LabelSet ground() const { return left_ | right_; }

  /// Canonical form: the side holding the smallest ground member goes left.
  Bipartition canonical() const;
  Bipartition swapped() const { return Bipartition(right_, left_); }

  bool operator==(const Bipartition& o) const { return left_ == o.left_ && right_ == o.right_; }

 private:
  LabelSet left_, right_;
};

/// Ancestor-closed set of internal vertex labels, kept sorted.
struct Prefix {
  std::vector<int> vertex_labels;

  std::size_t size() const { return vertex_labels.size(); }
  bool contains(int label) const;
};

/// Disjoint nonempty label sets covering a ground set; parts ordered by
/// smallest member.
struct Partition {
  std::vector<LabelSet> parts;

  bool operator==(const Partition& o) const { return parts == o.parts; }
};

// --- construction helpers ---------------------------------------------------

/// Assembles one gene tree bottom-up; finalize_forest wires the caches.
class GeneTreeBuilder {
 public:
  int add_leaf(GenomeId genome);
  int add_internal(int left, int right);
  GeneTree take(int root);

 private:
  std::vector<GeneNode> arena_;
};

/// Computes every derived field of a GeneForest: parent links are checked,
/// label caches filled, ground and m computed, and vertex labels assigned
/// 1..m in depth-first pre-order across trees in input order.
GeneForest finalize_forest(std::vector<GeneTree> trees, GenomeTablePtr genomes);

class SpeciesTreeBuilder {
 public:
  explicit SpeciesTreeBuilder(GenomeTablePtr genomes) : genomes_(std::move(genomes)) {}
  int add_leaf(GenomeId genome);
  int add_internal(std::vector<int> children);
  SpeciesTree finish(int root);

 private:
  GenomeTablePtr genomes_;
  std::vector<SpeciesNode> arena_;
};

// --- operations ---------------------------------------------------------

/// True iff the two child label sets of the vertex intersect; such a vertex
/// is a duplication under every species tree.
bool is_apparent_duplication(const GeneForest& forest, int vertex_label);

/// Image of every forest node in the species tree: leaves map to the leaf of
/// their genome, internal vertices to the species LCA of the children's
/// images. Indexed [tree][node].
struct LcaMapping {
  std::vector<std::vector<int>> node_to_species;
};

LcaMapping lca_mapping(const GeneForest& forest, const SpeciesTree& species);

/// Labels of the internal vertices that are duplications with respect to the
/// species tree (image equals a child's image), sorted ascending.
std::vector<int> duplication_vertices(const GeneForest& forest, const SpeciesTree& species);

/// d(F,S): number of duplication vertices under the LCA mapping.
int duplication_count(const GeneForest& forest, const SpeciesTree& species);

/// d1(F,B): number of internal vertices with a child label set meeting both
/// sides of the bipartition, i.e. duplications preceding the first speciation.
int d1_cost(const GeneForest& forest, const Bipartition& b);

/// The vertices counted by d1_cost, as a prefix (ancestor-closed).
Prefix duplications_preceding(const GeneForest& forest, const Bipartition& b);

/// Removes every vertex whose label set meets both sides; the surviving
/// complete subtrees are regrouped into a forest per side (sharing the genome
/// table, vertex labels reassigned per output forest).
std::pair<GeneForest, GeneForest> split_forest(const GeneForest& forest, const Bipartition& b);

/// Partition of the ground set by connectivity after deleting, from the
/// label-cut graph of the forest, all edges labeled by prefix members.
Partition partition_from_prefix(const GeneForest& forest, const Prefix& prefix);

// --- shared internals used by the cut machinery -----------------------------

/// One generating clique of the label-cut graph: all pairs inside `members`
/// are edges labeled `label`. Only sets with >= 2 members are emitted.
struct Hyperedge {
  int label;
  LabelSet members;
};

/// Hyperedges of H(F): per internal vertex, its child label sets.
std::vector<Hyperedge> child_hyperedges(const GeneForest& forest);

/// Connected components over `ground` induced by the given hyperedges,
/// skipping labels for which `keep_label` is false.
template <typename KeepLabel>
Partition components_from_hyperedges(const LabelSet& ground,
                                     const std::vector<Hyperedge>& edges,
                                     KeepLabel keep_label);

Partition components_from_hyperedges(const LabelSet& ground, const std::vector<Hyperedge>& edges);

/// Union-find over genome ids; small helper shared by the partition code.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);
  int find(int x);
  void unite(int a, int b);

 private:
  std::vector<int> parent_;
};

/// Groups `ground` members into a Partition by their union-find root,
/// parts ordered by smallest member.
Partition partition_from_components(const LabelSet& ground, DisjointSets& dsu);

template <typename KeepLabel>
Partition components_from_hyperedges(const LabelSet& ground,
                                     const std::vector<Hyperedge>& edges,
                                     KeepLabel keep_label) {
  DisjointSets dsu(ground.size());
  for (const Hyperedge& e : edges) {
    if (!keep_label(e.label)) continue;
    auto first = e.members.find_first();
    for (auto i = e.members.find_next(first); i != LabelSet::npos; i = e.members.find_next(i))
      dsu.unite(static_cast<int>(first), static_cast<int>(i));
  }
  return partition_from_components(ground, dsu);
}

}  // namespace dupcut
