#include "dupcut/forest.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace dupcut {

GenomeId GenomeTable::intern(std::string_view name) {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<GenomeId>(i);
  names_.emplace_back(name);
  return static_cast<GenomeId>(names_.size() - 1);
}

GenomeId GenomeTable::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<GenomeId>(i);
  return -1;
}

const GeneNode& GeneForest::node_of(int vertex_label) const {
  if (vertex_label < 1 || vertex_label > internal_count)
    throw std::out_of_range("unknown vertex label " + std::to_string(vertex_label));
  const VertexRef ref = vertex_of_label[static_cast<std::size_t>(vertex_label)];
  return trees[static_cast<std::size_t>(ref.tree)].arena[static_cast<std::size_t>(ref.node)];
}

bool SpeciesTree::is_binary() const {
  for (const SpeciesNode& n : arena)
    if (!n.is_leaf() && n.children.size() != 2) return false;
  return true;
}

Bipartition::Bipartition(LabelSet left, LabelSet right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (left_.size() != right_.size())
    throw std::invalid_argument("bipartition sides use different universes");
  if (left_.none() || right_.none()) throw std::invalid_argument("bipartition side is empty");
  if (left_.intersects(right_)) throw std::invalid_argument("bipartition sides overlap");
}

Bipartition Bipartition::canonical() const {
  const auto l = left_.find_first();
  const auto r = right_.find_first();
  if (r < l) return Bipartition(right_, left_);
  return *this;
}

bool Prefix::contains(int label) const {
  return std::binary_search(vertex_labels.begin(), vertex_labels.end(), label);
}

// --- builders ----------------------------------------------------------------

int GeneTreeBuilder::add_leaf(GenomeId genome) {
  GeneNode n;
  n.leaf_genome = genome;
  arena_.push_back(std::move(n));
  return static_cast<int>(arena_.size()) - 1;
}

int GeneTreeBuilder::add_internal(int left, int right) {
  GeneNode n;
  n.children[0] = left;
  n.children[1] = right;
  arena_.push_back(std::move(n));
  const int id = static_cast<int>(arena_.size()) - 1;
  arena_[static_cast<std::size_t>(left)].parent = id;
  arena_[static_cast<std::size_t>(right)].parent = id;
  return id;
}

GeneTree GeneTreeBuilder::take(int root) {
  GeneTree t;
  t.root = root;
  t.arena = std::move(arena_);
  arena_.clear();
  return t;
}

GeneForest finalize_forest(std::vector<GeneTree> trees, GenomeTablePtr genomes) {
  GeneForest f;
  f.genomes = std::move(genomes);
  f.trees = std::move(trees);
  const std::size_t k = f.genomes->size();
  f.ground = LabelSet(k);
  f.vertex_of_label.assign(1, VertexRef{});  // slot 0 unused

  int next_label = 1;
  for (std::size_t ti = 0; ti < f.trees.size(); ++ti) {
    GeneTree& t = f.trees[ti];
    if (t.root == kNoNode || t.arena.empty()) throw std::invalid_argument("tree without a root");
    // Iterative pre-order: assign labels, then fill label caches bottom-up.
    std::vector<int> order;
    order.reserve(t.arena.size());
    std::vector<int> stack{t.root};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      order.push_back(v);
      GeneNode& n = t.arena[static_cast<std::size_t>(v)];
      if (!n.is_leaf()) {
        n.vertex_label = next_label++;
        f.vertex_of_label.push_back(VertexRef{static_cast<int>(ti), v});
        stack.push_back(n.children[1]);
        stack.push_back(n.children[0]);
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      GeneNode& n = t.arena[static_cast<std::size_t>(*it)];
      if (n.is_leaf()) {
        if (n.leaf_genome < 0 || static_cast<std::size_t>(n.leaf_genome) >= k)
          throw std::invalid_argument("leaf genome id out of range");
        n.labels = LabelSet(k);
        n.labels.set(static_cast<std::size_t>(n.leaf_genome));
      } else {
        n.labels = t.arena[static_cast<std::size_t>(n.children[0])].labels |
                   t.arena[static_cast<std::size_t>(n.children[1])].labels;
      }
    }
    f.ground |= t.arena[static_cast<std::size_t>(t.root)].labels;
  }
  f.internal_count = next_label - 1;
  return f;
}

int SpeciesTreeBuilder::add_leaf(GenomeId genome) {
  SpeciesNode n;
  n.leaf_genome = genome;
  arena_.push_back(std::move(n));
  return static_cast<int>(arena_.size()) - 1;
}

int SpeciesTreeBuilder::add_internal(std::vector<int> children) {
  if (children.size() < 2)
    throw std::invalid_argument("species internal node needs at least two children");
  SpeciesNode n;
  n.children = std::move(children);
  arena_.push_back(std::move(n));
  const int id = static_cast<int>(arena_.size()) - 1;
  for (int c : arena_[static_cast<std::size_t>(id)].children)
    arena_[static_cast<std::size_t>(c)].parent = id;
  return id;
}

SpeciesTree SpeciesTreeBuilder::finish(int root) {
  SpeciesTree s;
  s.genomes = std::move(genomes_);
  s.arena = std::move(arena_);
  s.root = root;
  const std::size_t k = s.genomes->size();
  s.ground = LabelSet(k);
  s.leaf_of_genome.assign(k, kNoNode);

  std::vector<int> order;
  order.reserve(s.arena.size());
  std::vector<int> stack{root};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    SpeciesNode& n = s.arena[static_cast<std::size_t>(v)];
    n.depth = n.parent == kNoNode ? 0 : s.arena[static_cast<std::size_t>(n.parent)].depth + 1;
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    SpeciesNode& n = s.arena[static_cast<std::size_t>(*it)];
    if (n.is_leaf()) {
      n.labels = LabelSet(k);
      n.labels.set(static_cast<std::size_t>(n.leaf_genome));
      if (s.leaf_of_genome[static_cast<std::size_t>(n.leaf_genome)] != kNoNode)
        throw std::invalid_argument("genome labels two species leaves: " +
                                    s.genomes->name(n.leaf_genome));
      s.leaf_of_genome[static_cast<std::size_t>(n.leaf_genome)] = *it;
    } else {
      n.labels = LabelSet(k);
      for (int c : n.children) n.labels |= s.arena[static_cast<std::size_t>(c)].labels;
    }
  }
  s.ground = s.arena[static_cast<std::size_t>(root)].labels;
  return s;
}

// --- operations ----------------------------------------------------------

bool is_apparent_duplication(const GeneForest& forest, int vertex_label) {
  const VertexRef ref = [&] {
    if (vertex_label < 1 || vertex_label > forest.internal_count)
      throw std::out_of_range("unknown vertex label " + std::to_string(vertex_label));
    return forest.vertex_of_label[static_cast<std::size_t>(vertex_label)];
  }();
  const GeneTree& t = forest.trees[static_cast<std::size_t>(ref.tree)];
  const GeneNode& n = t.arena[static_cast<std::size_t>(ref.node)];
  return t.arena[static_cast<std::size_t>(n.children[0])].labels.intersects(
      t.arena[static_cast<std::size_t>(n.children[1])].labels);
}

namespace {

int species_lca(const SpeciesTree& s, int a, int b) {
  while (a != b) {
    const SpeciesNode& na = s.arena[static_cast<std::size_t>(a)];
    const SpeciesNode& nb = s.arena[static_cast<std::size_t>(b)];
    if (na.depth >= nb.depth)
      a = na.parent;
    else
      b = nb.parent;
  }
  return a;
}

}  // namespace

LcaMapping lca_mapping(const GeneForest& forest, const SpeciesTree& species) {
  LcaMapping m;
  m.node_to_species.resize(forest.trees.size());
  for (std::size_t ti = 0; ti < forest.trees.size(); ++ti) {
    const GeneTree& t = forest.trees[ti];
    auto& image = m.node_to_species[ti];
    image.assign(t.arena.size(), kNoNode);
    // Children precede parents in reverse pre-order.
    std::vector<int> order;
    order.reserve(t.arena.size());
    std::vector<int> stack{t.root};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      order.push_back(v);
      const GeneNode& n = t.arena[static_cast<std::size_t>(v)];
      if (!n.is_leaf()) {
        stack.push_back(n.children[1]);
        stack.push_back(n.children[0]);
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const GeneNode& n = t.arena[static_cast<std::size_t>(*it)];
      if (n.is_leaf()) {
        const std::string& name = forest.genomes->name(n.leaf_genome);
        const GenomeId sg = species.genomes->find(name);
        const int leaf = sg < 0 ? kNoNode : species.leaf_of_genome[static_cast<std::size_t>(sg)];
        if (leaf == kNoNode)
          throw GenomeMismatchError("genome '" + name + "' is not a leaf of the species tree");
        image[static_cast<std::size_t>(*it)] = leaf;
      } else {
        image[static_cast<std::size_t>(*it)] =
            species_lca(species, image[static_cast<std::size_t>(n.children[0])],
                        image[static_cast<std::size_t>(n.children[1])]);
      }
    }
  }
  return m;
}

std::vector<int> duplication_vertices(const GeneForest& forest, const SpeciesTree& species) {
  const LcaMapping m = lca_mapping(forest, species);
  std::vector<int> out;
  for (std::size_t ti = 0; ti < forest.trees.size(); ++ti) {
    const GeneTree& t = forest.trees[ti];
    for (std::size_t v = 0; v < t.arena.size(); ++v) {
      const GeneNode& n = t.arena[v];
      if (n.is_leaf()) continue;
      const int img = m.node_to_species[ti][v];
      if (img == m.node_to_species[ti][static_cast<std::size_t>(n.children[0])] ||
          img == m.node_to_species[ti][static_cast<std::size_t>(n.children[1])])
        out.push_back(n.vertex_label);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int duplication_count(const GeneForest& forest, const SpeciesTree& species) {
  return static_cast<int>(duplication_vertices(forest, species).size());
}

namespace {

void require_ground_match(const GeneForest& forest, const Bipartition& b) {
  if (b.ground() != forest.ground)
    throw std::invalid_argument("bipartition ground set does not match the forest");
}

}  // namespace

int d1_cost(const GeneForest& forest, const Bipartition& b) {
  require_ground_match(forest, b);
  int cost = 0;
  for (const GeneTree& t : forest.trees)
    for (const GeneNode& n : t.arena) {
      if (n.is_leaf()) continue;
      const LabelSet& cl = t.arena[static_cast<std::size_t>(n.children[0])].labels;
      const LabelSet& cr = t.arena[static_cast<std::size_t>(n.children[1])].labels;
      if ((cl.intersects(b.left()) && cl.intersects(b.right())) ||
          (cr.intersects(b.left()) && cr.intersects(b.right())))
        ++cost;
    }
  return cost;
}

Prefix duplications_preceding(const GeneForest& forest, const Bipartition& b) {
  require_ground_match(forest, b);
  Prefix p;
  for (const GeneTree& t : forest.trees)
    for (const GeneNode& n : t.arena) {
      if (n.is_leaf()) continue;
      const LabelSet& cl = t.arena[static_cast<std::size_t>(n.children[0])].labels;
      const LabelSet& cr = t.arena[static_cast<std::size_t>(n.children[1])].labels;
      if ((cl.intersects(b.left()) && cl.intersects(b.right())) ||
          (cr.intersects(b.left()) && cr.intersects(b.right())))
        p.vertex_labels.push_back(n.vertex_label);
    }
  std::sort(p.vertex_labels.begin(), p.vertex_labels.end());
  return p;
}

namespace {

// Copies the subtree rooted at `src` into the builder, returning the new id.
int copy_subtree(const GeneTree& t, int src, GeneTreeBuilder& builder) {
  const GeneNode& n = t.arena[static_cast<std::size_t>(src)];
  if (n.is_leaf()) return builder.add_leaf(n.leaf_genome);
  const int l = copy_subtree(t, n.children[0], builder);
  const int r = copy_subtree(t, n.children[1], builder);
  return builder.add_internal(l, r);
}

}  // namespace

std::pair<GeneForest, GeneForest> split_forest(const GeneForest& forest, const Bipartition& b) {
  require_ground_match(forest, b);
  std::vector<GeneTree> left_trees, right_trees;
  for (const GeneTree& t : forest.trees) {
    // Surviving subtree roots in pre-order: vertices whose label set sits on
    // one side while the parent (if any) straddles.
    std::vector<int> stack{t.root};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      const GeneNode& n = t.arena[static_cast<std::size_t>(v)];
      const bool straddling = n.labels.intersects(b.left()) && n.labels.intersects(b.right());
      if (straddling) {
        stack.push_back(n.children[1]);
        stack.push_back(n.children[0]);
        continue;
      }
      GeneTreeBuilder builder;
      GeneTree sub = builder.take(copy_subtree(t, v, builder));
      if (n.labels.is_subset_of(b.left()))
        left_trees.push_back(std::move(sub));
      else
        right_trees.push_back(std::move(sub));
    }
  }
  return {finalize_forest(std::move(left_trees), forest.genomes),
          finalize_forest(std::move(right_trees), forest.genomes)};
}

std::vector<Hyperedge> child_hyperedges(const GeneForest& forest) {
  std::vector<Hyperedge> out;
  for (const GeneTree& t : forest.trees)
    for (const GeneNode& n : t.arena) {
      if (n.is_leaf()) continue;
      for (int c : n.children) {
        const LabelSet& s = t.arena[static_cast<std::size_t>(c)].labels;
        if (s.count() >= 2) out.push_back(Hyperedge{n.vertex_label, s});
      }
    }
  return out;
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n) {
  for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<int>(i);
}

int DisjointSets::find(int x) {
  while (parent_[static_cast<std::size_t>(x)] != x) {
    parent_[static_cast<std::size_t>(x)] =
        parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
    x = parent_[static_cast<std::size_t>(x)];
  }
  return x;
}

void DisjointSets::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (a > b) std::swap(a, b);  // smaller id wins; keeps component roots canonical
  parent_[static_cast<std::size_t>(b)] = a;
}

Partition partition_from_components(const LabelSet& ground, DisjointSets& dsu) {
  Partition p;
  std::vector<int> part_of_root(ground.size(), -1);
  for (auto g = ground.find_first(); g != LabelSet::npos; g = ground.find_next(g)) {
    const int root = dsu.find(static_cast<int>(g));
    int& slot = part_of_root[static_cast<std::size_t>(root)];
    if (slot < 0) {
      slot = static_cast<int>(p.parts.size());
      p.parts.emplace_back(ground.size());
    }
    p.parts[static_cast<std::size_t>(slot)].set(g);
  }
  // Roots are visited in ascending ground order, so parts are already
  // ordered by smallest member.
  return p;
}

Partition components_from_hyperedges(const LabelSet& ground, const std::vector<Hyperedge>& edges) {
  return components_from_hyperedges(ground, edges, [](int) { return true; });
}

Partition partition_from_prefix(const GeneForest& forest, const Prefix& prefix) {
  for (int label : prefix.vertex_labels) {
    const GeneNode& n = forest.node_of(label);
    if (n.parent != kNoNode) {
      const VertexRef ref = forest.vertex_of_label[static_cast<std::size_t>(label)];
      const GeneTree& t = forest.trees[static_cast<std::size_t>(ref.tree)];
      const int parent_label = t.arena[static_cast<std::size_t>(n.parent)].vertex_label;
      if (!prefix.contains(parent_label))
        throw std::invalid_argument("vertex set is not ancestor-closed: vertex " +
                                    std::to_string(label) + " lacks its parent " +
                                    std::to_string(parent_label));
    }
  }
  const std::vector<Hyperedge> edges = child_hyperedges(forest);
  return components_from_hyperedges(forest.ground, edges,
                                    [&](int label) { return !prefix.contains(label); });
}

}  // namespace dupcut
