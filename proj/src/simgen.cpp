#include "dupcut/simgen.hpp"

#include "dupcut/rng.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace dupcut {

namespace {

// Mutable binary topology under construction. Leaves keep their creation
// order; edges are identified by their lower endpoint.
struct Topology {
  struct Node {
    int parent = -1;
    int left = -1, right = -1;
    int leaf_index = -1;  // creation order among leaves, -1 for internal
  };
  std::vector<Node> nodes;
  int root = 0;
  std::vector<int> non_root;  // nodes below an edge, in creation order
  int leaf_count = 0;

  int add_node() {
    nodes.emplace_back();
    return static_cast<int>(nodes.size()) - 1;
  }
};

// Uniform rooted binary topology by sequential attachment: the j-th leaf
// picks one of the 2j-3 edges (stem included), so every shape on n leaves
// has probability 1/(2n-3)!!.
Topology random_topology(int n_leaves, std::mt19937_64& rng) {
  Topology t;
  const int first = t.add_node();
  t.nodes[first].leaf_index = t.leaf_count++;
  t.root = first;
  for (int j = 2; j <= n_leaves; ++j) {
    const int leaf = t.add_node();
    t.nodes[leaf].leaf_index = t.leaf_count++;
    const std::uint64_t choice = uniform_below(rng, t.non_root.size() + 1);
    const int joint = t.add_node();
    if (choice == 0) {
      // Attach above the root.
      t.nodes[joint].left = t.root;
      t.nodes[joint].right = leaf;
      t.nodes[t.root].parent = joint;
      t.nodes[leaf].parent = joint;
      t.non_root.push_back(t.root);
      t.non_root.push_back(leaf);
      t.root = joint;
    } else {
      const int child = t.non_root[choice - 1];
      const int parent = t.nodes[child].parent;
      (t.nodes[parent].left == child ? t.nodes[parent].left : t.nodes[parent].right) = joint;
      t.nodes[joint].parent = parent;
      t.nodes[joint].left = child;
      t.nodes[joint].right = leaf;
      t.nodes[child].parent = joint;
      t.nodes[leaf].parent = joint;
      t.non_root.push_back(joint);
      t.non_root.push_back(leaf);
    }
  }
  return t;
}

}  // namespace

GenomeTablePtr default_genome_table(int k) {
  auto table = std::make_shared<GenomeTable>();
  const int width = static_cast<int>(std::to_string(k - 1).size());
  for (int i = 0; i < k; ++i) {
    std::string digits = std::to_string(i);
    table->intern("g" + std::string(static_cast<std::size_t>(width) - digits.size(), '0') +
                  digits);
  }
  return table;
}

SpeciesTree random_species_tree(int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("need at least two genomes");
  std::mt19937_64 rng(seed);
  const Topology topo = random_topology(k, rng);
  SpeciesTreeBuilder builder(default_genome_table(k));

  // Leaf i carries genome i.
  auto emit = [&](auto&& self, int v) -> int {
    const Topology::Node& n = topo.nodes[static_cast<std::size_t>(v)];
    if (n.leaf_index >= 0) return builder.add_leaf(n.leaf_index);
    const int l = self(self, n.left);
    const int r = self(self, n.right);
    return builder.add_internal({l, r});
  };
  return builder.finish(emit(emit, topo.root));
}

namespace {

struct FamilySim {
  const SpeciesTree& species;
  const SimConfig& cfg;
  std::mt19937_64& rng;
  GeneTreeBuilder& builder;
  int stem_duplications = 0;
  int leaves = 0;

  // Lineage that just arrived at species vertex v: speciate or terminate.
  int at_vertex(int v) {
    const SpeciesNode& n = species.arena[static_cast<std::size_t>(v)];
    if (n.is_leaf()) {
      ++leaves;
      return builder.add_leaf(n.leaf_genome);
    }
    const int l = on_branch(n.children[0], false);
    const int r = on_branch(n.children[1], false);
    if (l >= 0 && r >= 0) return builder.add_internal(l, r);
    return l >= 0 ? l : r;  // unary pass-through suppressed
  }

  // Lineage entering the branch above species vertex v. Returns the built
  // gene subtree or -1 if every descendant copy was lost. The trial order
  // (duplication, then per-copy loss, then recursion) is fixed so a seed
  // reproduces the forest exactly.
  int on_branch(int v, bool stem) {
    if (bernoulli(rng, cfg.p_dup)) {
      if (stem) ++stem_duplications;
      const int a = bernoulli(rng, cfg.p_loss) ? -1 : at_vertex(v);
      const int b = bernoulli(rng, cfg.p_loss) ? -1 : at_vertex(v);
      if (a >= 0 && b >= 0) return builder.add_internal(a, b);
      return a >= 0 ? a : b;
    }
    return bernoulli(rng, cfg.p_loss) ? -1 : at_vertex(v);
  }
};

}  // namespace

std::pair<GeneForest, SimReport> random_gene_forest(const SpeciesTree& species,
                                                    const SimConfig& cfg) {
  if (!species.is_binary())
    throw std::invalid_argument("gene-family simulation needs a binary species tree");
  if (cfg.p_dup < 0 || cfg.p_dup > 1 || cfg.p_loss < 0 || cfg.p_loss > 1)
    throw std::invalid_argument("event probabilities must lie in [0, 1]");
  SimReport report;
  std::vector<GeneTree> trees;
  for (int fam = 0; fam < cfg.n_families; ++fam) {
    std::mt19937_64 rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(fam)));
    GeneTreeBuilder builder;
    FamilySim sim{species, cfg, rng, builder};
    const int root = sim.on_branch(species.root, true);
    report.planted_root_duplications += sim.stem_duplications;
    if (root < 0 || sim.leaves < 2) continue;
    ++report.surviving_families;
    trees.push_back(builder.take(root));
  }
  return {finalize_forest(std::move(trees), species.genomes), report};
}

GeneForest random_forest_uniform(int k, int n_trees, int leaves_per_tree, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("need at least two genomes");
  if (leaves_per_tree < 2) throw std::invalid_argument("need at least two leaves per tree");
  GenomeTablePtr table = default_genome_table(k);
  std::vector<GeneTree> trees;
  trees.reserve(static_cast<std::size_t>(n_trees));
  for (int ti = 0; ti < n_trees; ++ti) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(ti)));
    const Topology topo = random_topology(leaves_per_tree, rng);
    std::vector<GenomeId> leaf_genome(static_cast<std::size_t>(leaves_per_tree));
    for (int i = 0; i < leaves_per_tree; ++i)
      leaf_genome[static_cast<std::size_t>(i)] =
          static_cast<GenomeId>(uniform_below(rng, static_cast<std::uint64_t>(k)));

    GeneTreeBuilder builder;
    auto emit = [&](auto&& self, int v) -> int {
      const Topology::Node& n = topo.nodes[static_cast<std::size_t>(v)];
      if (n.leaf_index >= 0)
        return builder.add_leaf(leaf_genome[static_cast<std::size_t>(n.leaf_index)]);
      const int l = self(self, n.left);
      const int r = self(self, n.right);
      return builder.add_internal(l, r);
    };
    trees.push_back(builder.take(emit(emit, topo.root)));
  }
  return finalize_forest(std::move(trees), std::move(table));
}

}  // namespace dupcut
