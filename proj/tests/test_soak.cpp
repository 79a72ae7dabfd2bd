#include <doctest.h>

#include <cstdlib>

#include "sgm/admissibility.hpp"
#include "sgm/spectrum.hpp"
#include "test_helpers.hpp"

using namespace sgm;

namespace {

/// Exhaustive reference for the CohP decision on small rings: every ordered
/// tuple of positive-degree basis classes up to length m, no pruning, no
/// shared enumeration with the implementation. Lengths above m are lossless
/// to skip: degrees are at least 1, so the sum would exceed m and the
/// product would be clamped to zero anyway.
bool naive_cohp(const ManifoldModel& M, int n0) {
    const int m = M.dimension;
    std::vector<ClassRef> pool;
    for (int d = 1; d <= m - n0; ++d)
        for (int i = 0; i < M.ring->rank(d); ++i) pool.push_back({d, i});
    if (pool.empty()) return false;

    std::vector<size_t> pick;
    auto rec = [&](auto&& self) -> bool {
        if (!pick.empty()) {
            int sum = 0;
            std::vector<RingElement> classes;
            for (size_t p : pick) {
                sum += pool[p].degree;
                classes.push_back(basis_element(M.ring, pool[p]));
            }
            if (sum >= n0 && sum <= m && !is_zero(product_of_sequence(classes))) return true;
        }
        if (static_cast<int>(pick.size()) == m) return false;
        for (size_t p = 0; p < pool.size(); ++p) {
            pick.push_back(p);
            if (self(self)) return true;
            pick.pop_back();
        }
        return false;
    };
    return rec(rec);
}

int env_rounds(const char* name, int fallback) {
    const char* v = std::getenv(name);
    return v ? std::atoi(v) : fallback;
}

}  // namespace

TEST_SUITE("soak") {

TEST_CASE("cohp_check agrees with the exhaustive reference on small rings") {
    auto Q = CoefficientSpec::rationals();
    auto F2 = CoefficientSpec::prime_field(2);
    auto F5 = CoefficientSpec::prime_field(5);

    std::vector<ManifoldModel> models;
    models.push_back(build_sphere(3, Q));
    models.push_back(build_torus(3, Q));
    models.push_back(build_torus(3, F5));
    models.push_back(build_complex_projective(2, Q));
    models.push_back(build_real_projective(4, F2));
    models.push_back(build_real_projective(5, F2));
    models.push_back(kunneth_product(build_sphere(2, Q), build_sphere(2, Q)));
    models.push_back(kunneth_product(build_sphere(1, Q), build_sphere(3, Q)));
    models.push_back(connected_sum(kunneth_product(build_sphere(2, Q), build_sphere(2, Q)),
                                   kunneth_product(build_sphere(2, Q), build_sphere(2, Q))));
    models.push_back(connected_sum(build_real_projective(3, F2), build_torus(3, F2)));

    for (const auto& M : models)
        for (int n0 = 1; n0 <= M.dimension - 1; ++n0) {
            CAPTURE(M.source_expression);
            CAPTURE(n0);
            CHECK(cohp_check(M, n0).has_value() == naive_cohp(M, n0));
        }
}

TEST_CASE("randomized end-to-end consistency") {
    const int rounds = env_rounds("SGM_SOAK_ROUNDS", 40);
    std::mt19937_64 rng(env_rounds("SGM_SOAK_SEED", 1));

    const CoefficientSpec coeffs[] = {CoefficientSpec::rationals(), CoefficientSpec::integers(),
                                      CoefficientSpec::prime_field(2), CoefficientSpec::prime_field(5)};
    for (int round = 0; round < rounds; ++round) {
        const auto& coeff = coeffs[round % 4];
        bool char2 = coeff.characteristic() == 2;
        auto recipe = sgm::testing::random_recipe(9, char2, rng, 200);
        CAPTURE(recipe_text(*recipe));
        CAPTURE(coeff.name());

        auto model = build(recipe, coeff);
        REQUIRE(model.dimension == static_cast<int>(recipe_dimension(*recipe)));
        auto report = validate_ring(*model.ring);
        if (!report.ok()) CAPTURE(report.violations.front().detail);
        REQUIRE(report.ok());
        if (model.dimension < 2) continue;

        int n_max = obstructed_max(model);
        for (int n = 1; n <= n_max; ++n) {
            auto w = cohp_check(model, n);
            REQUIRE(w.has_value());
            CHECK(witness_replays(model, *w));
            CHECK(witness_meets_cohp_bounds(*w, model.dimension, n));
        }
        if (n_max < model.dimension - 1)
            CHECK(!cohp_check(model, n_max + 1).has_value());

        auto derivation = derive_sp(recipe, coeff);
        if (derivation) {
            CHECK(derivation->n0 > n_max);
            std::vector<std::string> why;
            bool ok = replay_derivation(*derivation, coeff, &why);
            if (!ok) CAPTURE(why.front());
            CHECK(ok);
        }
    }
}

}  // TEST_SUITE
