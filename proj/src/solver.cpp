#include "dupcut/solver.hpp"

#include "dupcut/errors.hpp"
#include "dupcut/sfm.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dupcut {

namespace {

std::vector<GenomeId> ground_members(const GeneForest& forest) {
  return set_members(forest.ground);
}

// Compares left sides by their sorted genome-name sequences; the tie-break
// order fixed for every exact enumeration.
bool name_lex_less(const LabelSet& a, const LabelSet& b, const GenomeTable& names) {
  std::vector<std::string> an, bn;
  for (GenomeId g : set_members(a)) an.push_back(names.name(g));
  for (GenomeId g : set_members(b)) bn.push_back(names.name(g));
  std::sort(an.begin(), an.end());
  std::sort(bn.begin(), bn.end());
  return an < bn;
}

// Child label-set pairs of every internal vertex, the d1 inner loop's data.
std::vector<std::pair<const LabelSet*, const LabelSet*>> child_set_pairs(
    const GeneForest& forest) {
  std::vector<std::pair<const LabelSet*, const LabelSet*>> out;
  out.reserve(static_cast<std::size_t>(forest.internal_count));
  for (const GeneTree& t : forest.trees)
    for (const GeneNode& n : t.arena)
      if (!n.is_leaf())
        out.emplace_back(&t.arena[static_cast<std::size_t>(n.children[0])].labels,
                         &t.arena[static_cast<std::size_t>(n.children[1])].labels);
  return out;
}

int d1_of_left(const std::vector<std::pair<const LabelSet*, const LabelSet*>>& pairs,
               const LabelSet& left) {
  int cost = 0;
  for (const auto& [a, b] : pairs)
    if (straddles(*a, left) || straddles(*b, left)) ++cost;
  return cost;
}

LabelSet left_from_mask(const std::vector<GenomeId>& members, std::uint64_t mask,
                        std::size_t universe) {
  // members[0] is always on the left; mask bits select from the rest.
  LabelSet left(universe);
  left.set(static_cast<std::size_t>(members[0]));
  for (std::size_t i = 1; i < members.size(); ++i)
    if ((mask >> (i - 1)) & 1u) left.set(static_cast<std::size_t>(members[i]));
  return left;
}

struct SweepBest {
  int cost = std::numeric_limits<int>::max();
  LabelSet left;
};

// Serial reference kernel for the bipartition sweep. Ties within a shard are
// broken by name order, the same rule the shard merge applies, so any thread
// count lands on the same bipartition.
SweepBest sweep_masks(const std::vector<std::pair<const LabelSet*, const LabelSet*>>& pairs,
                      const std::vector<GenomeId>& members, std::size_t universe,
                      std::uint64_t lo, std::uint64_t hi, const GenomeTable& names) {
  SweepBest best;
  for (std::uint64_t mask = lo; mask < hi; ++mask) {
    LabelSet left = left_from_mask(members, mask, universe);
    const int cost = d1_of_left(pairs, left);
    if (cost < best.cost || (cost == best.cost && name_lex_less(left, best.left, names))) {
      best.cost = cost;
      best.left = std::move(left);
    }
  }
  return best;
}

void require_exact_size(const GeneForest& forest, int k, const SolverLimits& limits, int max_k) {
  if (k < 2) throw LimitError("need at least two genomes");
  const int cap = std::min(max_k, limits.exact_hard_cap);
  if (k > cap)
    throw LimitError("ground set of " + std::to_string(k) +
                     " genomes exceeds the exact enumeration limit of " + std::to_string(cap));
  (void)forest;
}

}  // namespace

ApproxResult approx_mdbp(const GeneForest& forest) {
  const std::vector<GenomeId> members = ground_members(forest);
  if (members.size() < 2) throw LimitError("need at least two genomes");
  const std::size_t universe = forest.universe();

  // Connectivity of I(F): each internal vertex spans L(x). (For apparent
  // duplications the two child cliques share a genome, so the span clique
  // connects exactly the same vertices.)
  std::vector<Hyperedge> spans;
  for (const GeneTree& t : forest.trees)
    for (const GeneNode& n : t.arena)
      if (!n.is_leaf() && n.labels.count() >= 2)
        spans.push_back(Hyperedge{n.vertex_label, n.labels});
  const Partition icomps = components_from_hyperedges(forest.ground, spans);

  if (icomps.parts.size() >= 2) {
    // Zero duplications precede a speciation along component lines; group the
    // components to balance sizes, in component order.
    LabelSet left(universe), right(universe);
    for (const LabelSet& part : icomps.parts) {
      if (left.count() <= right.count())
        left |= part;
      else
        right |= part;
    }
    Bipartition b = Bipartition(std::move(left), std::move(right)).canonical();
    const int realized = d1_cost(forest, b);
    return ApproxResult{std::move(b), 0, realized, 0, std::nullopt};
  }

  ForestOracle fo = make_i_oracle(forest);
  const MinCutResult min = queyranne_minimize(fo.oracle);
  const LabelSet left_genomes = fo.to_genomes(min.minimizer, universe);
  Bipartition b =
      Bipartition(left_genomes, forest.ground - left_genomes).canonical();
  const int realized = d1_cost(forest, b);
  return ApproxResult{std::move(b), min.value, realized, min.evaluations, std::nullopt};
}

ExactResult exact_mdbp(const GeneForest& forest, bool collect_all, const SolverLimits& limits) {
  const std::vector<GenomeId> members = ground_members(forest);
  const int k = static_cast<int>(members.size());
  require_exact_size(forest, k, limits,
                     collect_all ? limits.all_optimal_max_k : limits.exact_max_k);
  const std::size_t universe = forest.universe();
  const auto pairs = child_set_pairs(forest);

  const std::uint64_t total = (std::uint64_t{1} << (k - 1)) - 1;
  SweepBest best;
  const int threads = std::max(1, limits.threads);
  if (threads == 1 || total < 1024) {
    best = sweep_masks(pairs, members, universe, 0, total, *forest.genomes);
  } else {
    const int shards = static_cast<int>(std::min<std::uint64_t>(total, 8 * threads));
    std::vector<SweepBest> partial(static_cast<std::size_t>(shards));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
    for (int s = 0; s < shards; ++s)
      partial[static_cast<std::size_t>(s)] = sweep_masks(
          pairs, members, universe, total * s / shards, total * (s + 1) / shards, *forest.genomes);
    for (SweepBest& p : partial)
      if (p.cost < best.cost ||
          (p.cost == best.cost && name_lex_less(p.left, best.left, *forest.genomes)))
        best = std::move(p);
  }

  ExactResult result{Bipartition(best.left, forest.ground - best.left), best.cost, std::nullopt};
  if (collect_all) {
    std::vector<Bipartition> ties;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      LabelSet left = left_from_mask(members, mask, universe);
      if (d1_of_left(pairs, left) == best.cost)
        ties.emplace_back(left, forest.ground - left);
    }
    result.optimal_cuts = std::move(ties);
  }
  return result;
}

namespace {

// Depth-first enumeration of ancestor-closed vertex sets of a given size.
// Vertices are added in increasing label order; pre-order labeling makes a
// parent's label smaller than its children's, so closure only needs the
// parent to be present already. Visit returns false to stop the search.
//
// Only edge-bearing vertices (a child label set with >= 2 genomes, i.e. at
// least one hyperedge) are enumerated: an edgeless member deletes nothing,
// every vertex below it inside a prefix is edgeless too, and dropping that
// whole sub-prefix keeps closure and the partition, so a minimum prefix
// never contains one. Parents of edge-bearing vertices are edge-bearing, so
// closure survives the restriction.
class PrefixEnumerator {
 public:
  explicit PrefixEnumerator(const GeneForest& forest) : forest_(forest) {
    parent_label_.assign(static_cast<std::size_t>(forest.internal_count) + 1, 0);
    has_hyperedge_.assign(static_cast<std::size_t>(forest.internal_count) + 1, 0);
    for (int label = 1; label <= forest.internal_count; ++label) {
      const VertexRef ref = forest.vertex_of_label[static_cast<std::size_t>(label)];
      const GeneTree& t = forest.trees[static_cast<std::size_t>(ref.tree)];
      const GeneNode& n = t.arena[static_cast<std::size_t>(ref.node)];
      parent_label_[static_cast<std::size_t>(label)] =
          n.parent == kNoNode ? 0 : t.arena[static_cast<std::size_t>(n.parent)].vertex_label;
      has_hyperedge_[static_cast<std::size_t>(label)] =
          t.arena[static_cast<std::size_t>(n.children[0])].labels.count() >= 2 ||
          t.arena[static_cast<std::size_t>(n.children[1])].labels.count() >= 2;
    }
  }

  template <typename Visit>
  bool enumerate(int size, Visit&& visit) {
    chosen_.clear();
    in_set_.assign(parent_label_.size(), 0);
    return descend(size, 0, visit);
  }

 private:
  template <typename Visit>
  bool descend(int remaining, int min_label, Visit& visit) {
    if (remaining == 0) return visit(chosen_);
    for (int label = min_label + 1; label <= forest_.internal_count; ++label) {
      if (!has_hyperedge_[static_cast<std::size_t>(label)]) continue;
      const int p = parent_label_[static_cast<std::size_t>(label)];
      if (p != 0 && !in_set_[static_cast<std::size_t>(p)]) continue;
      chosen_.push_back(label);
      in_set_[static_cast<std::size_t>(label)] = 1;
      const bool keep_going = descend(remaining - 1, label, visit);
      in_set_[static_cast<std::size_t>(label)] = 0;
      chosen_.pop_back();
      if (!keep_going) return false;
    }
    return true;
  }

  const GeneForest& forest_;
  std::vector<int> parent_label_;
  std::vector<char> has_hyperedge_;
  std::vector<int> chosen_;
  std::vector<char> in_set_;
};

}  // namespace

PrefixResult exact_mdpp(const GeneForest& forest, const SolverLimits& limits) {
  const std::vector<GenomeId> members = ground_members(forest);
  if (members.size() < 2) throw LimitError("need at least two genomes");
  if (forest.internal_count > limits.mdpp_max_m)
    throw LimitError("forest has " + std::to_string(forest.internal_count) +
                     " internal vertices, above the prefix-search limit of " +
                     std::to_string(limits.mdpp_max_m));

  const std::vector<Hyperedge> hyperedges = child_hyperedges(forest);
  PrefixEnumerator enumerator(forest);
  std::vector<char> deleted(static_cast<std::size_t>(forest.internal_count) + 1, 0);

  for (int t = 0; t <= forest.internal_count; ++t) {
    PrefixResult found;
    bool ok = false;
    enumerator.enumerate(t, [&](const std::vector<int>& labels) {
      for (int l : labels) deleted[static_cast<std::size_t>(l)] = 1;
      Partition p = components_from_hyperedges(
          forest.ground, hyperedges,
          [&](int label) { return !deleted[static_cast<std::size_t>(label)]; });
      for (int l : labels) deleted[static_cast<std::size_t>(l)] = 0;
      if (p.parts.size() < 2) return true;  // keep searching
      found = PrefixResult{Prefix{labels}, t, std::move(p)};
      ok = true;
      return false;
    });
    if (ok) return found;
  }
  // All internal vertices deleted leaves every genome isolated; with k >= 2
  // the loop above must have returned.
  throw std::logic_error("prefix search exhausted without a split");
}

Partition all_optimal_bipartition_partition(const GeneForest& forest, const SolverLimits& limits) {
  const ExactResult exact = exact_mdbp(forest, /*collect_all=*/true, limits);
  // Meet: refine the ground set by each optimal cut.
  std::vector<LabelSet> parts{forest.ground};
  for (const Bipartition& b : *exact.optimal_cuts) {
    std::vector<LabelSet> next;
    for (const LabelSet& part : parts) {
      LabelSet inl = part & b.left();
      LabelSet inr = part & b.right();
      if (inl.any()) next.push_back(std::move(inl));
      if (inr.any()) next.push_back(std::move(inr));
    }
    parts = std::move(next);
  }
  std::sort(parts.begin(), parts.end(),
            [](const LabelSet& a, const LabelSet& b) { return a.find_first() < b.find_first(); });
  return Partition{std::move(parts)};
}

namespace {

Partition meet_partitions(const LabelSet& ground, const std::vector<Partition>& partitions) {
  std::vector<LabelSet> parts{ground};
  for (const Partition& p : partitions) {
    std::vector<LabelSet> next;
    for (const LabelSet& part : parts)
      for (const LabelSet& q : p.parts) {
        LabelSet inter = part & q;
        if (inter.any()) next.push_back(std::move(inter));
      }
    parts = std::move(next);
  }
  std::sort(parts.begin(), parts.end(),
            [](const LabelSet& a, const LabelSet& b) { return a.find_first() < b.find_first(); });
  return Partition{std::move(parts)};
}

// Every minimum-size prefix that splits the partition, via the same deepening
// search as exact_mdpp but exhaustive at the optimal depth.
std::vector<PrefixResult> all_min_prefixes(const GeneForest& forest, const SolverLimits& limits) {
  if (set_members(forest.ground).size() < 2) throw LimitError("need at least two genomes");
  if (forest.internal_count > limits.mdpp_max_m)
    throw LimitError("forest exceeds the prefix-search limit");

  const std::vector<Hyperedge> hyperedges = child_hyperedges(forest);
  PrefixEnumerator enumerator(forest);
  std::vector<char> deleted(static_cast<std::size_t>(forest.internal_count) + 1, 0);

  for (int t = 0; t <= forest.internal_count; ++t) {
    std::vector<PrefixResult> found;
    enumerator.enumerate(t, [&](const std::vector<int>& labels) {
      for (int l : labels) deleted[static_cast<std::size_t>(l)] = 1;
      Partition p = components_from_hyperedges(
          forest.ground, hyperedges,
          [&](int label) { return !deleted[static_cast<std::size_t>(label)]; });
      for (int l : labels) deleted[static_cast<std::size_t>(l)] = 0;
      if (p.parts.size() >= 2) found.push_back(PrefixResult{Prefix{labels}, t, std::move(p)});
      return true;
    });
    if (!found.empty()) return found;
  }
  throw std::logic_error("prefix search exhausted without a split");
}

}  // namespace

Partition all_optimal_prefix_partition(const GeneForest& forest, const SolverLimits& limits) {
  const std::vector<PrefixResult> optima = all_min_prefixes(forest, limits);
  std::vector<Partition> induced;
  induced.reserve(optima.size());
  for (const PrefixResult& r : optima) induced.push_back(r.induced_partition);
  return meet_partitions(forest.ground, induced);
}

bool edge_in_some_min_cut(const GeneForest& forest, GenomeId u, GenomeId v, int label,
                          const SolverLimits& limits) {
  const EdgeLabeledMultigraph h = build_graph_h(forest);
  GenomeId a = u, b = v;
  if (a > b) std::swap(a, b);
  const LabeledEdge edge{a, b, label};
  if (!std::binary_search(h.edges.begin(), h.edges.end(), edge))
    throw std::invalid_argument("edge is not in the label-cut graph");

  const ExactResult exact = exact_mdbp(forest, /*collect_all=*/true, limits);
  for (const Bipartition& cut : *exact.optimal_cuts) {
    const bool separated = cut.left().test(static_cast<std::size_t>(u)) !=
                           cut.left().test(static_cast<std::size_t>(v));
    if (!separated) continue;
    const CutEvaluation eval = cut_label_size(h, cut);
    if (std::binary_search(eval.crossing_labels.begin(), eval.crossing_labels.end(), label))
      return true;
  }
  return false;
}

bool vertex_in_some_min_prefix(const GeneForest& forest, int vertex_label,
                               const SolverLimits& limits) {
  forest.node_of(vertex_label);  // throws on unknown labels
  const std::vector<PrefixResult> optima = all_min_prefixes(forest, limits);
  for (const PrefixResult& r : optima)
    if (r.prefix.contains(vertex_label)) return true;
  return false;
}

namespace {

int build_caterpillar(const std::vector<GenomeId>& sorted, SpeciesTreeBuilder& builder) {
  int node = builder.add_leaf(sorted[0]);
  for (std::size_t i = 1; i < sorted.size(); ++i)
    node = builder.add_internal({node, builder.add_leaf(sorted[i])});
  return node;
}

bool has_informative_vertex(const GeneForest& forest) {
  for (const GeneTree& t : forest.trees)
    for (const GeneNode& n : t.arena)
      if (!n.is_leaf() && n.labels.count() >= 2) return true;
  return false;
}

int greedy_recurse(const GeneForest& forest, GreedyMethod method, const SolverLimits& limits,
                   SpeciesTreeBuilder& builder, std::vector<GreedyStep>& steps) {
  const std::vector<GenomeId> members = ground_members(forest);
  if (members.size() == 1) return builder.add_leaf(members[0]);
  if (members.size() == 2)
    return builder.add_internal({builder.add_leaf(members[0]), builder.add_leaf(members[1])});

  std::vector<GenomeId> by_name = members;
  std::sort(by_name.begin(), by_name.end(), [&](GenomeId a, GenomeId b) {
    return forest.genomes->name(a) < forest.genomes->name(b);
  });

  if (!has_informative_vertex(forest)) {
    // Nothing in the data orders these genomes; emit a fixed shape and say so.
    LabelSet left = forest.ground;
    left.reset(static_cast<std::size_t>(by_name.back()));
    LabelSet right(forest.universe());
    right.set(static_cast<std::size_t>(by_name.back()));
    Bipartition b(std::move(left), std::move(right));
    steps.push_back(GreedyStep{forest.ground, b, d1_cost(forest, b), true});
    return build_caterpillar(by_name, builder);
  }

  Bipartition chosen = [&] {
    if (method == GreedyMethod::kExact) return exact_mdbp(forest, false, limits).bipartition;
    return approx_mdbp(forest).bipartition;
  }();
  steps.push_back(GreedyStep{forest.ground, chosen, d1_cost(forest, chosen), false});

  auto [left_forest, right_forest] = split_forest(forest, chosen);
  const int l = greedy_recurse(left_forest, method, limits, builder, steps);
  const int r = greedy_recurse(right_forest, method, limits, builder, steps);
  return builder.add_internal({l, r});
}

}  // namespace

GreedyResult greedy_species_tree(const GeneForest& forest, GreedyMethod method,
                                 const SolverLimits& limits) {
  if (forest.ground.none()) throw LimitError("forest has no genomes");
  SpeciesTreeBuilder builder(forest.genomes);
  std::vector<GreedyStep> steps;
  const int root = greedy_recurse(forest, method, limits, builder, steps);
  GreedyResult result{builder.finish(root), std::move(steps), 0};
  result.total_duplications = duplication_count(forest, result.tree);
  return result;
}

}  // namespace dupcut
