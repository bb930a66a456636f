#include "dupcut/sfm.hpp"

#include "dupcut/errors.hpp"
#include "dupcut/rng.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dupcut {

namespace {

struct RangeBest {
  std::int64_t value = std::numeric_limits<std::int64_t>::max();
  LabelSet minimizer;
};

LabelSet subset_from_mask(std::uint64_t mask, int k, bool fix_element_zero) {
  LabelSet s(static_cast<std::size_t>(k));
  if (fix_element_zero) {
    s.set(0);
    for (int i = 1; i < k; ++i)
      if ((mask >> (i - 1)) & 1u) s.set(static_cast<std::size_t>(i));
  } else {
    for (int i = 0; i < k; ++i)
      if ((mask >> i) & 1u) s.set(static_cast<std::size_t>(i));
  }
  return s;
}

// Serial reference kernel; the parallel sweep runs it once per shard.
RangeBest scan_masks(const SetFunctionOracle& oracle, std::uint64_t lo, std::uint64_t hi,
                     bool fix_element_zero) {
  RangeBest best;
  const int k = oracle.ground_size();
  for (std::uint64_t mask = lo; mask < hi; ++mask) {
    LabelSet s = subset_from_mask(mask, k, fix_element_zero);
    const std::int64_t v = oracle.evaluate(s);
    if (v < best.value || (v == best.value && member_lex_less(s, best.minimizer))) {
      best.value = v;
      best.minimizer = std::move(s);
    }
  }
  return best;
}

void merge_best(RangeBest& into, RangeBest&& other) {
  if (other.minimizer.empty()) return;
  if (other.value < into.value ||
      (other.value == into.value && member_lex_less(other.minimizer, into.minimizer)))
    into = std::move(other);
}

}  // namespace

MinCutResult brute_force_minimize(const SetFunctionOracle& oracle, const BruteForceOptions& opts) {
  const int k = oracle.ground_size();
  if (k < 2) throw LimitError("brute force needs a ground set of at least 2 elements");
  if (k > opts.max_ground)
    throw LimitError("ground set of " + std::to_string(k) + " exceeds the brute-force limit of " +
                     std::to_string(opts.max_ground));

  const std::uint64_t before = oracle.evaluation_count();
  const bool fix0 = oracle.symmetric();
  // Symmetric: subsets containing element 0, masks over the other k-1
  // elements, full set excluded. General: all proper nonempty subsets.
  const std::uint64_t lo = fix0 ? 0 : 1;
  const std::uint64_t hi =
      fix0 ? (std::uint64_t{1} << (k - 1)) - 1 : (std::uint64_t{1} << k) - 1;

  RangeBest best;
  const int threads = std::max(1, opts.threads);
  if (threads == 1) {
    best = scan_masks(oracle, lo, hi, fix0);
  } else {
    const std::uint64_t span = hi - lo;
    const int shards = static_cast<int>(std::min<std::uint64_t>(span, 8 * threads));
    std::vector<RangeBest> partial(static_cast<std::size_t>(shards));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
    for (int s = 0; s < shards; ++s) {
      const std::uint64_t a = lo + span * s / shards;
      const std::uint64_t b = lo + span * (s + 1) / shards;
      partial[static_cast<std::size_t>(s)] = scan_masks(oracle, a, b, fix0);
    }
    for (RangeBest& p : partial) merge_best(best, std::move(p));
  }
  return MinCutResult{best.minimizer, best.value, oracle.evaluation_count() - before};
}

MinCutResult queyranne_minimize(const SetFunctionOracle& oracle) {
  const int k = oracle.ground_size();
  if (k < 2) throw LimitError("minimization needs a ground set of at least 2 elements");
  const std::uint64_t before = oracle.evaluation_count();
  const std::size_t universe = static_cast<std::size_t>(k);

  std::vector<LabelSet> supers;
  supers.reserve(universe);
  std::vector<int> alive(universe);
  for (int i = 0; i < k; ++i) {
    supers.push_back(label_set_of(universe, {static_cast<GenomeId>(i)}));
    alive[static_cast<std::size_t>(i)] = i;
  }

  std::int64_t best_value = std::numeric_limits<std::int64_t>::max();
  LabelSet best_set;

  while (alive.size() >= 2) {
    const std::size_t s = alive.size();
    std::vector<std::int64_t> singleton(s);
    for (std::size_t i = 0; i < s; ++i)
      singleton[i] = oracle.evaluate(supers[static_cast<std::size_t>(alive[i])]);

    // Minimum-key ordering: the adjacency-style sweep that makes the last
    // two entries a pendant pair.
    std::vector<char> placed(s, 0);
    std::vector<std::size_t> order{0};
    placed[0] = 1;
    LabelSet grown = supers[static_cast<std::size_t>(alive[0])];
    while (order.size() < s) {
      std::int64_t best_key = std::numeric_limits<std::int64_t>::max();
      std::size_t best_i = s;
      for (std::size_t i = 0; i < s; ++i) {
        if (placed[i]) continue;
        const std::int64_t key =
            oracle.evaluate(grown | supers[static_cast<std::size_t>(alive[i])]) - singleton[i];
        if (key < best_key) {
          best_key = key;
          best_i = i;
        }
      }
      placed[best_i] = 1;
      order.push_back(best_i);
      grown |= supers[static_cast<std::size_t>(alive[best_i])];
    }

    const std::size_t last = order[s - 1];
    const std::size_t prev = order[s - 2];
    if (singleton[last] < best_value) {
      best_value = singleton[last];
      best_set = supers[static_cast<std::size_t>(alive[last])];
    }
    // Contract the pendant pair.
    supers[static_cast<std::size_t>(alive[prev])] |= supers[static_cast<std::size_t>(alive[last])];
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(last));
  }
  return MinCutResult{best_set, best_value, oracle.evaluation_count() - before};
}

std::int64_t submodularity_deficit(const SetFunctionOracle& oracle, const LabelSet& a,
                                   const LabelSet& b) {
  return oracle.evaluate(a | b) + oracle.evaluate(a & b) - oracle.evaluate(a) -
         oracle.evaluate(b);
}

std::vector<SubmodularityViolation> check_submodular(const SetFunctionOracle& oracle, int samples,
                                                     std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("check_submodular needs at least one sample");
  std::mt19937_64 rng(seed);
  const std::size_t universe = static_cast<std::size_t>(oracle.ground_size());
  std::vector<SubmodularityViolation> violations;
  for (int i = 0; i < samples; ++i) {
    LabelSet a = random_subset(rng, universe);
    LabelSet b = random_subset(rng, universe);
    const std::int64_t deficit = submodularity_deficit(oracle, a, b);
    if (deficit > 0) violations.push_back({std::move(a), std::move(b), deficit});
  }
  return violations;
}

}  // namespace dupcut
