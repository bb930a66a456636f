#pragma once

#include "dupcut/label_set.hpp"

#include <atomic>
#include <cstdint>
#include <functional>
#include <vector>

namespace dupcut {

/// Integer-valued set function over a dense ground set, with an evaluation
/// counter. The callable must be pure; evaluation is safe to run from several
/// threads at once.
class SetFunctionOracle {
 public:
  using Fn = std::function<std::int64_t(const LabelSet&)>;

  SetFunctionOracle(int ground_size, bool symmetric, Fn fn)
      : ground_size_(ground_size), symmetric_(symmetric), fn_(std::move(fn)) {}

  SetFunctionOracle(const SetFunctionOracle&) = delete;
  SetFunctionOracle& operator=(const SetFunctionOracle&) = delete;

  std::int64_t evaluate(const LabelSet& x) const {
    count_.fetch_add(1, std::memory_order_relaxed);
    return fn_(x);
  }

  int ground_size() const { return ground_size_; }
  /// Declared symmetry (f(X) = f(V-X)); lets brute force halve its sweep.
  bool symmetric() const { return symmetric_; }
  std::uint64_t evaluation_count() const { return count_.load(std::memory_order_relaxed); }

 private:
  int ground_size_;
  bool symmetric_;
  Fn fn_;
  mutable std::atomic<std::uint64_t> count_{0};
};

/// A proper nonempty minimizer (cut semantics: the empty set and the full
/// ground set are excluded from the domain).
struct MinCutResult {
  LabelSet minimizer;
  std::int64_t value = 0;
  std::uint64_t evaluations = 0;
};

struct BruteForceOptions {
  int max_ground = 20;
  int threads = 1;
};

/// Exact reference: sweeps every proper nonempty subset (those containing
/// element 0 when the oracle is symmetric). Ties resolve to the
/// lexicographically smallest member sequence. The sweep shards across
/// OpenMP threads when threads > 1; results are identical at any thread
/// count.
MinCutResult brute_force_minimize(const SetFunctionOracle& oracle,
                                  const BruteForceOptions& opts = {});

/// Minimizes a symmetric submodular function by repeated pendant-pair
/// extraction: each round orders the current super-elements by
/// minimum-key selection on u -> f(W + u) - f({u}), records the last
/// element's singleton cut as a candidate, and contracts the final pair.
/// The best candidate over all rounds is optimal. O(k^3) evaluations.
/// The result is meaningless if the oracle is not symmetric submodular;
/// violations are not detected here (see check_submodular).
MinCutResult queyranne_minimize(const SetFunctionOracle& oracle);

struct SubmodularityViolation {
  LabelSet a, b;
  std::int64_t deficit;  // f(A|B) + f(A&B) - f(A) - f(B), positive
};

/// f(A|B) + f(A&B) - f(A) - f(B); positive values witness non-submodularity.
std::int64_t submodularity_deficit(const SetFunctionOracle& oracle, const LabelSet& a,
                                   const LabelSet& b);

/// Draws `samples` random subset pairs with the seeded generator and returns
/// every violated instance. An empty result is evidence, not proof.
std::vector<SubmodularityViolation> check_submodular(const SetFunctionOracle& oracle, int samples,
                                                     std::uint64_t seed);

}  // namespace dupcut
