#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sgm/manifold.hpp"

namespace sgm {

/// Certificate that a manifold satisfies CohP for a target level: basis
/// classes with positive degrees at most m - target_n0 whose degree sum is
/// at least target_n0 and whose cup product does not vanish. Re-evaluating
/// product_of_sequence on the classes reproduces `product` exactly.
///
/// The exact-sum search variant reuses this struct with target_n0 holding
/// the required degree sum.
struct ObstructionWitness {
    std::vector<ClassRef> classes;  // non-decreasing in (degree, index)
    RingElement product;
    int target_n0 = 0;
    int total_degree = 0;
};

/// Every multiset of integers with parts in [1, m - n0] and sum in [n0, m],
/// each exactly once, as non-decreasing part lists ordered by increasing
/// length and then lexicographically. Sums above m are pruned because
/// products there vanish.
std::vector<std::vector<int>> enumerate_degree_multisets(int m, int n0);

/// Decides CohP_{A, m, n0}: returns the deterministically least witness
/// (by length, then degree multiset, then basis indices) or nullopt when no
/// sequence of classes qualifies. Searching basis tuples is complete over
/// free graded pieces: any nonvanishing product of arbitrary classes
/// expands to a nonvanishing basis-tuple product of the same degrees.
std::optional<ObstructionWitness> cohp_check(const ManifoldModel& m, int n0);

/// Variant with an exact degree-sum constraint: degrees at most max_degree,
/// sum exactly `exact_sum`, product nonzero. Returned witness records
/// exact_sum in target_n0.
std::optional<ObstructionWitness> cohp_check_exact(const ManifoldModel& m, int max_degree, int exact_sum);

/// Largest n0 for which cohp_check succeeds, or 0 when none. By
/// monotonicity every 1 <= n <= n_max is obstructed.
int obstructed_max(const ManifoldModel& m);

/// Test instrumentation: samples random elements of admissible degrees and
/// multiplies them out. On a nonzero product, extracts the least basis
/// tuple with the same degree multiset (one exists by multilinearity) as
/// the returned witness. Success must imply cohp_check succeeds.
std::optional<ObstructionWitness> random_sampling_oracle(const ManifoldModel& m, int n0, int trials,
                                                         std::uint64_t seed = 0x5eed'c0de'1234'5678ULL);

/// Test instrumentation: true when some product of `trials` random element
/// tuples with the given degree multiset is nonzero.
bool sample_product_nonzero(const ManifoldModel& m, const std::vector<int>& degrees, int trials,
                            std::uint64_t seed = 0x5eed'c0de'1234'5678ULL);

/// Recomputes the witness product from its classes: exact match and nonzero.
bool witness_replays(const ManifoldModel& m, const ObstructionWitness& w);

/// Degree-side CohP constraints alone (no product evaluation).
bool witness_meets_cohp_bounds(const ObstructionWitness& w, int m, int n0);

}  // namespace sgm
