#include "dupcut/cutgraph.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dupcut {

namespace {

void append_pairs(const LabelSet& members, int label, std::set<LabeledEdge>& edges) {
  const std::vector<GenomeId> ids = set_members(members);
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      edges.insert(LabeledEdge{ids[i], ids[j], label});
}

EdgeLabeledMultigraph assemble(const GeneForest& forest, std::vector<Hyperedge> hyperedges) {
  EdgeLabeledMultigraph g;
  g.vertices = forest.ground;
  g.hyperedges = std::move(hyperedges);
  std::stable_sort(g.hyperedges.begin(), g.hyperedges.end(),
                   [](const Hyperedge& a, const Hyperedge& b) { return a.label < b.label; });
  std::set<LabeledEdge> edges;
  for (const Hyperedge& e : g.hyperedges) append_pairs(e.members, e.label, edges);
  g.edges.assign(edges.begin(), edges.end());
  for (const LabeledEdge& e : g.edges) g.labels.push_back(e.label);
  std::sort(g.labels.begin(), g.labels.end());
  g.labels.erase(std::unique(g.labels.begin(), g.labels.end()), g.labels.end());
  return g;
}

}  // namespace

EdgeLabeledMultigraph build_graph_h(const GeneForest& forest) {
  return assemble(forest, child_hyperedges(forest));
}

EdgeLabeledMultigraph build_graph_i(const GeneForest& forest, bool literal_hyperedges) {
  std::vector<Hyperedge> hyperedges;
  for (const GeneTree& t : forest.trees)
    for (const GeneNode& n : t.arena) {
      if (n.is_leaf()) continue;
      const LabelSet& cl = t.arena[static_cast<std::size_t>(n.children[0])].labels;
      const LabelSet& cr = t.arena[static_cast<std::size_t>(n.children[1])].labels;
      const bool apparent = cl.intersects(cr);
      if (apparent || literal_hyperedges) {
        if (cl.count() >= 2) hyperedges.push_back(Hyperedge{n.vertex_label, cl});
        if (cr.count() >= 2) hyperedges.push_back(Hyperedge{n.vertex_label, cr});
      }
      if (!apparent) hyperedges.push_back(Hyperedge{n.vertex_label, n.labels});
    }
  return assemble(forest, std::move(hyperedges));
}

CutEvaluation cut_label_size(const EdgeLabeledMultigraph& g, const Bipartition& b) {
  if (g.vertices.size() != b.left().size() || !g.vertices.is_subset_of(b.ground()))
    throw std::invalid_argument("bipartition does not cover the graph vertices");
  CutEvaluation eval;
  for (const LabeledEdge& e : g.edges) {
    const bool u_left = b.left().test(static_cast<std::size_t>(e.u));
    const bool v_left = b.left().test(static_cast<std::size_t>(e.v));
    if (u_left != v_left) eval.crossing_labels.push_back(e.label);
  }
  std::sort(eval.crossing_labels.begin(), eval.crossing_labels.end());
  eval.crossing_labels.erase(std::unique(eval.crossing_labels.begin(), eval.crossing_labels.end()),
                             eval.crossing_labels.end());
  eval.label_size = static_cast<int>(eval.crossing_labels.size());
  return eval;
}

namespace {

void require_within_ground(const GeneForest& forest, const LabelSet& x_set) {
  if (x_set.size() != forest.universe() || !x_set.is_subset_of(forest.ground))
    throw std::invalid_argument("subset is not within the forest ground set");
}

}  // namespace

int cut_value_h(const GeneForest& forest, const LabelSet& x_set) {
  require_within_ground(forest, x_set);
  int value = 0;
  for (const GeneTree& t : forest.trees)
    for (const GeneNode& n : t.arena) {
      if (n.is_leaf()) continue;
      if (straddles(t.arena[static_cast<std::size_t>(n.children[0])].labels, x_set) ||
          straddles(t.arena[static_cast<std::size_t>(n.children[1])].labels, x_set))
        ++value;
    }
  return value;
}

int cut_value_i(const GeneForest& forest, const LabelSet& x_set) {
  require_within_ground(forest, x_set);
  int value = 0;
  for (const GeneTree& t : forest.trees)
    for (const GeneNode& n : t.arena)
      if (!n.is_leaf() && straddles(n.labels, x_set)) ++value;
  return value;
}

Partition connected_components(const EdgeLabeledMultigraph& g) {
  return components_from_hyperedges(g.vertices, g.hyperedges);
}

std::string export_dot(const EdgeLabeledMultigraph& g, const GenomeTable& genomes) {
  std::vector<GenomeId> verts = set_members(g.vertices);
  std::sort(verts.begin(), verts.end(), [&](GenomeId a, GenomeId b) {
    return genomes.name(a) < genomes.name(b);
  });
  struct NamedEdge {
    std::string u, v;
    int label;
    auto operator<=>(const NamedEdge&) const = default;
  };
  std::vector<NamedEdge> edges;
  edges.reserve(g.edges.size());
  for (const LabeledEdge& e : g.edges) {
    std::string a = genomes.name(e.u);
    std::string b = genomes.name(e.v);
    if (b < a) std::swap(a, b);
    edges.push_back(NamedEdge{std::move(a), std::move(b), e.label});
  }
  std::sort(edges.begin(), edges.end());

  std::ostringstream out;
  out << "graph G {\n";
  for (GenomeId v : verts) out << "  \"" << genomes.name(v) << "\";\n";
  for (const NamedEdge& e : edges)
    out << "  \"" << e.u << "\" -- \"" << e.v << "\" [label=" << e.label << "];\n";
  out << "}\n";
  return out.str();
}

namespace {

// Straddle sets translated into the oracle universe, one bucket per vertex.
struct OracleSets {
  std::vector<LabelSet> primary;              // per vertex
  std::vector<std::pair<LabelSet, LabelSet>> pairs;  // per vertex, for H
};

std::vector<GenomeId> ground_members(const GeneForest& forest) { return set_members(forest.ground); }

LabelSet translate(const LabelSet& genome_set, const std::vector<int>& index_of_genome,
                   std::size_t k) {
  LabelSet out(k);
  for (auto g = genome_set.find_first(); g != LabelSet::npos; g = genome_set.find_next(g)) {
    const int idx = index_of_genome[g];
    if (idx >= 0) out.set(static_cast<std::size_t>(idx));
  }
  return out;
}

std::vector<int> build_index_of_genome(const std::vector<GenomeId>& members,
                                       std::size_t universe) {
  std::vector<int> index(universe, -1);
  for (std::size_t i = 0; i < members.size(); ++i)
    index[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
  return index;
}

}  // namespace

LabelSet ForestOracle::to_genomes(const LabelSet& x, std::size_t table_universe) const {
  LabelSet out(table_universe);
  for (auto i = x.find_first(); i != LabelSet::npos; i = x.find_next(i))
    out.set(static_cast<std::size_t>(genome_of_index[i]));
  return out;
}

LabelSet ForestOracle::from_genomes(const LabelSet& genome_set) const {
  std::vector<int> index(genome_set.size(), -1);
  for (std::size_t i = 0; i < genome_of_index.size(); ++i)
    index[static_cast<std::size_t>(genome_of_index[i])] = static_cast<int>(i);
  return translate(genome_set, index, genome_of_index.size());
}

ForestOracle make_h_oracle(const GeneForest& forest) {
  std::vector<GenomeId> members = ground_members(forest);
  const std::size_t k = members.size();
  const std::vector<int> index = build_index_of_genome(members, forest.universe());

  auto sets = std::make_shared<std::vector<std::pair<LabelSet, LabelSet>>>();
  for (const GeneTree& t : forest.trees)
    for (const GeneNode& n : t.arena) {
      if (n.is_leaf()) continue;
      sets->emplace_back(
          translate(t.arena[static_cast<std::size_t>(n.children[0])].labels, index, k),
          translate(t.arena[static_cast<std::size_t>(n.children[1])].labels, index, k));
    }
  auto fn = [sets](const LabelSet& x) {
    std::int64_t v = 0;
    for (const auto& [a, b] : *sets)
      if (straddles(a, x) || straddles(b, x)) ++v;
    return v;
  };
  return ForestOracle{SetFunctionOracle(static_cast<int>(k), true, std::move(fn)),
                      std::move(members)};
}

ForestOracle make_i_oracle(const GeneForest& forest) {
  std::vector<GenomeId> members = ground_members(forest);
  const std::size_t k = members.size();
  const std::vector<int> index = build_index_of_genome(members, forest.universe());

  auto spans = std::make_shared<std::vector<LabelSet>>();
  for (const GeneTree& t : forest.trees)
    for (const GeneNode& n : t.arena)
      if (!n.is_leaf()) spans->push_back(translate(n.labels, index, k));
  auto fn = [spans](const LabelSet& x) {
    std::int64_t v = 0;
    for (const LabelSet& s : *spans)
      if (straddles(s, x)) ++v;
    return v;
  };
  return ForestOracle{SetFunctionOracle(static_cast<int>(k), true, std::move(fn)),
                      std::move(members)};
}

}  // namespace dupcut
