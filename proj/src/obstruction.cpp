#include "sgm/obstruction.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace sgm {

namespace {

/// Non-decreasing part lists with parts in [1, max_part] and sum in
/// [min_sum, max_sum], ordered by (length, lexicographic).
std::vector<std::vector<int>> enumerate_multisets(int max_part, int min_sum, int max_sum) {
    std::vector<std::vector<int>> out;
    if (max_part < 1 || max_sum < min_sum || max_sum < 1) return out;
    std::vector<int> parts;
    // DFS in part order is lexicographic within a fixed length.
    auto gen = [&](auto&& self, int remaining_slots, int sum, int min_part) -> void {
        if (remaining_slots == 0) {
            if (sum >= min_sum) out.push_back(parts);
            return;
        }
        for (int p = min_part; p <= max_part; ++p) {
            if (sum + p * remaining_slots > max_sum) break;  // parts are non-decreasing
            parts.push_back(p);
            self(self, remaining_slots - 1, sum + p, p);
            parts.pop_back();
        }
    };
    for (int len = 1; len <= max_sum; ++len) gen(gen, len, 0, 1);
    return out;
}

void require_cohp_inputs(const ManifoldModel& M, int n0) {
    if (n0 < 1 || n0 > M.dimension - 1)
        throw Error(errc::invalid_argument,
                    "CohP level " + std::to_string(n0) + " must lie in [1, m-1] for m = " +
                        std::to_string(M.dimension));
    if (!M.free_homology && !M.ring->coeff().is_field())
        throw Error(errc::unsupported_ring,
                    "CohP search over the integers requires free graded pieces");
}

/// Least basis tuple (lexicographic over (degree, index) addresses, indices
/// non-decreasing within equal degrees) with a nonvanishing product, for a
/// fixed non-decreasing degree multiset. Permuting a tuple only changes the
/// product's sign, so non-decreasing tuples cover all of them. A zero
/// partial product zeroes every extension and prunes the subtree.
bool first_nonzero_tuple(const ManifoldModel& M, const std::vector<int>& degrees,
                         std::vector<ClassRef>& tuple, RingElement& product) {
    const auto& ring = M.ring;
    const int l = static_cast<int>(degrees.size());
    tuple.assign(l, ClassRef{});
    auto dfs = [&](auto&& self, int t, const RingElement* prefix) -> bool {
        int d = degrees[t];
        int start = (t > 0 && degrees[t] == degrees[t - 1]) ? tuple[t - 1].index : 0;
        for (int i = start; i < ring->rank(d); ++i) {
            RingElement cur = t == 0 ? basis_element(ring, {d, i})
                                     : cup(*prefix, basis_element(ring, {d, i}));
            if (is_zero(cur)) continue;
            tuple[t] = {d, i};
            if (t + 1 == l) {
                product = std::move(cur);
                return true;
            }
            if (self(self, t + 1, &cur)) return true;
        }
        return false;
    };
    return dfs(dfs, 0, nullptr);
}

bool formable(const ManifoldModel& M, const std::vector<int>& degrees) {
    return std::all_of(degrees.begin(), degrees.end(), [&](int d) { return M.ring->rank(d) > 0; });
}

std::optional<ObstructionWitness> search(const ManifoldModel& M,
                                         const std::vector<std::vector<int>>& multisets, int target) {
    for (const auto& degrees : multisets) {
        if (!formable(M, degrees)) continue;
        std::vector<ClassRef> tuple;
        RingElement product;
        if (first_nonzero_tuple(M, degrees, tuple, product)) {
            ObstructionWitness w;
            w.classes = std::move(tuple);
            w.product = std::move(product);
            w.target_n0 = target;
            w.total_degree = std::accumulate(degrees.begin(), degrees.end(), 0);
            return w;
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<std::vector<int>> enumerate_degree_multisets(int m, int n0) {
    if (n0 < 1 || n0 > m - 1)
        throw Error(errc::invalid_argument, "degree multiset enumeration needs 1 <= n0 <= m-1");
    return enumerate_multisets(m - n0, n0, m);
}

std::optional<ObstructionWitness> cohp_check(const ManifoldModel& M, int n0) {
    require_cohp_inputs(M, n0);
    return search(M, enumerate_degree_multisets(M.dimension, n0), n0);
}

std::optional<ObstructionWitness> cohp_check_exact(const ManifoldModel& M, int max_degree, int exact_sum) {
    if (exact_sum < 1) return std::nullopt;
    if (!M.free_homology && !M.ring->coeff().is_field())
        throw Error(errc::unsupported_ring,
                    "CohP search over the integers requires free graded pieces");
    int bound = std::min(max_degree, M.dimension);
    return search(M, enumerate_multisets(bound, exact_sum, exact_sum), exact_sum);
}

int obstructed_max(const ManifoldModel& M) {
    for (int n0 = M.dimension - 1; n0 >= 1; --n0)
        if (cohp_check(M, n0)) return n0;  // monotone: success here covers every smaller level
    return 0;
}

namespace {

RingElement random_element(const ManifoldModel& M, int degree, std::mt19937_64& rng) {
    const auto& A = M.ring->coeff();
    std::uniform_int_distribution<long> coeff_dist(-3, 3);
    std::vector<Scalar> coeffs(M.ring->rank(degree));
    for (auto& c : coeffs) c = A.from_int(coeff_dist(rng));
    return make_element(M.ring, degree, std::move(coeffs));
}

bool random_product_nonzero(const ManifoldModel& M, const std::vector<int>& degrees,
                            std::mt19937_64& rng) {
    RingElement p = random_element(M, degrees[0], rng);
    for (size_t t = 1; t < degrees.size() && !is_zero(p); ++t)
        p = cup(p, random_element(M, degrees[t], rng));
    return !is_zero(p);
}

}  // namespace

std::optional<ObstructionWitness> random_sampling_oracle(const ManifoldModel& M, int n0, int trials,
                                                         std::uint64_t seed) {
    require_cohp_inputs(M, n0);
    std::vector<std::vector<int>> multisets;
    for (auto& ms : enumerate_degree_multisets(M.dimension, n0))
        if (formable(M, ms)) multisets.push_back(std::move(ms));
    if (multisets.empty()) return std::nullopt;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, multisets.size() - 1);
    for (int trial = 0; trial < trials; ++trial) {
        const auto& degrees = multisets[pick(rng)];
        if (!random_product_nonzero(M, degrees, rng)) continue;
        // A nonzero product of arbitrary classes expands by multilinearity
        // into basis-tuple products of the same degrees, at least one of
        // which is nonzero; extract the least one as the certificate.
        std::vector<ClassRef> tuple;
        RingElement product;
        if (!first_nonzero_tuple(M, degrees, tuple, product))
            throw Error(errc::internal_inconsistency,
                        "random product nonzero but no basis tuple found (multilinearity violated)");
        ObstructionWitness w;
        w.classes = std::move(tuple);
        w.product = std::move(product);
        w.target_n0 = n0;
        w.total_degree = std::accumulate(degrees.begin(), degrees.end(), 0);
        return w;
    }
    return std::nullopt;
}

bool sample_product_nonzero(const ManifoldModel& M, const std::vector<int>& degrees, int trials,
                            std::uint64_t seed) {
    if (degrees.empty() || !formable(M, degrees)) return false;
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < trials; ++trial)
        if (random_product_nonzero(M, degrees, rng)) return true;
    return false;
}

bool witness_replays(const ManifoldModel& M, const ObstructionWitness& w) {
    if (w.classes.empty()) return false;
    std::vector<RingElement> classes;
    classes.reserve(w.classes.size());
    int sum = 0;
    for (ClassRef c : w.classes) {
        if (c.degree < 0 || c.index < 0 || c.index >= M.ring->rank(c.degree)) return false;
        classes.push_back(basis_element(M.ring, c));
        sum += c.degree;
    }
    if (sum != w.total_degree) return false;
    RingElement p = product_of_sequence(classes);
    return !is_zero(p) && p.degree == w.product.degree && p.coeffs == w.product.coeffs;
}

bool witness_meets_cohp_bounds(const ObstructionWitness& w, int m, int n0) {
    if (w.classes.empty()) return false;
    int sum = 0;
    for (ClassRef c : w.classes) {
        if (c.degree < 1 || c.degree > m - n0) return false;
        sum += c.degree;
    }
    return sum >= n0;
}

}  // namespace sgm
