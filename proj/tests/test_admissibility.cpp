#include <doctest.h>

#include "sgm/admissibility.hpp"
#include "test_helpers.hpp"

using namespace sgm;

TEST_SUITE("admissibility") {

TEST_CASE("R1 applies to spheres only") {
    auto Q = CoefficientSpec::rationals();
    auto r7 = rule_r1_sphere(build_sphere(7, Q));
    REQUIRE(r7.derivation.has_value());
    CHECK(r7.derivation->n0 == 1);
    CHECK(r7.derivation->rule == Rule::R1_Sphere);

    auto r2 = rule_r1_sphere(build_sphere(2, Q));
    REQUIRE(r2.derivation.has_value());
    CHECK(r2.derivation->n0 == 1);

    auto torus = rule_r1_sphere(build_torus(2, Q));
    CHECK(!torus.derivation.has_value());
    CHECK(!torus.reason.empty());
}

TEST_CASE("R2 thresholds on sphere-product sums") {
    auto s2s4 = product_recipe(sphere_recipe(2), sphere_recipe(4));
    auto sum3 = connected_sum_recipe(connected_sum_recipe(s2s4, s2s4), s2s4);
    auto r = rule_r2_sphere_product_sum(sum3);
    REQUIRE(r.derivation.has_value());
    CHECK(r.derivation->n0 == 3);  // k = min(2,4) = 2 on every summand
    CHECK(std::get<R2Side>(r.derivation->side).canonical_ks == std::vector<int>{2, 2, 2});

    // mixed sum: S(1)xS(3) # S(2)xS(2) needs every small factor below n
    auto mixed = connected_sum_recipe(product_recipe(sphere_recipe(1), sphere_recipe(3)),
                                      product_recipe(sphere_recipe(2), sphere_recipe(2)));
    auto rm = rule_r2_sphere_product_sum(mixed);
    REQUIRE(rm.derivation.has_value());
    CHECK(rm.derivation->n0 == 3);  // max(1, 2) + 1
    CHECK(derivation_has_mixed_sphere_sum(*rm.derivation));

    // a single product counts as a one-term sum
    auto s3s3 = product_recipe(sphere_recipe(3), sphere_recipe(3));
    auto rs = rule_r2_sphere_product_sum(s3s3);
    REQUIRE(rs.derivation.has_value());
    CHECK(rs.derivation->n0 == 4);
    CHECK(!derivation_has_mixed_sphere_sum(*rs.derivation));

    CHECK(!rule_r2_sphere_product_sum(torus_recipe(2)).derivation.has_value());
    auto triple = product_recipe(product_recipe(sphere_recipe(2), sphere_recipe(2)), sphere_recipe(2));
    CHECK(!rule_r2_sphere_product_sum(triple).derivation.has_value());
}

TEST_CASE("R2 is invariant under factor order") {
    auto a = rule_r2_sphere_product_sum(product_recipe(sphere_recipe(2), sphere_recipe(4)));
    auto b = rule_r2_sphere_product_sum(product_recipe(sphere_recipe(4), sphere_recipe(2)));
    REQUIRE(a.derivation.has_value());
    REQUIRE(b.derivation.has_value());
    CHECK(a.derivation->n0 == b.derivation->n0);
}

TEST_CASE("R3 closes connected sums at a common level") {
    auto Q = CoefficientSpec::rationals();
    auto s2s2 = kunneth_product(build_sphere(2, Q), build_sphere(2, Q));
    auto d = rule_r2_sphere_product_sum(s2s2.recipe);
    REQUIRE(d.derivation.has_value());
    CHECK(d.derivation->n0 == 3);

    auto r3 = rule_r3_connected_sum(s2s2, *d.derivation, s2s2, *d.derivation);
    REQUIRE(r3.derivation.has_value());
    CHECK(r3.derivation->n0 == 3);
    const auto& side = std::get<R3Side>(r3.derivation->side);
    CHECK(side.cohp_left.target_n0 == 2);
    CHECK(side.cohp_left.classes.size() == 1);  // one degree-2 generator suffices
    CHECK(witness_replays(s2s2, side.cohp_left));
    CHECK(replay_derivation(*r3.derivation, Q));

    // spheres can never anchor the closure: CohP fails at every level >= 1
    auto S4 = build_sphere(4, Q);
    auto d_s4 = rule_r1_sphere(S4);
    REQUIRE(d_s4.derivation.has_value());
    auto bad = rule_r3_connected_sum(S4, *d_s4.derivation, S4, *d_s4.derivation);
    CHECK(!bad.derivation.has_value());

    auto S5 = build_sphere(5, Q);
    auto d_s5 = rule_r1_sphere(S5);
    auto mism = rule_r3_connected_sum(S4, *d_s4.derivation, S5, *d_s5.derivation);
    CHECK(!mism.derivation.has_value());
    CHECK(mism.reason.find("dimension") != std::string::npos);
}

TEST_CASE("R4 certifies the triple product of 2-spheres at level 5") {
    auto Q = CoefficientSpec::rationals();
    auto s2s2 = kunneth_product(build_sphere(2, Q), build_sphere(2, Q));
    auto base_d = rule_r2_sphere_product_sum(s2s2.recipe);
    REQUIRE(base_d.derivation.has_value());
    auto F = build_sphere(2, Q);

    auto r4 = rule_r4_product(s2s2, *base_d.derivation, F, 5);
    REQUIRE(r4.derivation.has_value());
    CHECK(r4.derivation->n0 == 5);
    const auto& side = std::get<R4Side>(r4.derivation->side);
    CHECK(side.base_level == 3);
    CHECK(side.factor_dim == 2);
    CHECK(side.factor_degree_bound == 2);     // m' - n0' + 1
    CHECK(side.factor_exact.total_degree == 2);  // the factor's top class
    CHECK(side.product_cohp.target_n0 == 4);
    CHECK(side.immersion_min == 3);
    CHECK(replay_derivation(*r4.derivation, Q));

    // hypothesis (c): strip the declared immersion attribute
    auto F_stripped = build_sphere(2, Q);
    F_stripped.immersion_trivial_normal_min.reset();
    auto bad = rule_r4_product(s2s2, *base_d.derivation, F_stripped, 5);
    CHECK(!bad.derivation.has_value());
    CHECK(bad.reason.find("(c)") != std::string::npos);

    // a 2-dimensional base violates the level window
    auto t2 = kunneth_product(build_sphere(1, Q), build_sphere(1, Q));
    auto t2_d = rule_r2_sphere_product_sum(t2.recipe);
    REQUIRE(t2_d.derivation.has_value());
    auto low = rule_r4_product(t2, *t2_d.derivation, F, 2 + t2_d.derivation->n0);
    CHECK(!low.derivation.has_value());
}

TEST_CASE("derive_sp: the worked spectrum cases") {
    auto Q = CoefficientSpec::rationals();
    auto F2 = CoefficientSpec::prime_field(2);

    auto triple = product_recipe(product_recipe(sphere_recipe(2), sphere_recipe(2)), sphere_recipe(2));
    auto d = derive_sp(triple, Q);
    REQUIRE(d.has_value());
    CHECK(d->rule == Rule::R4_ProductClosure);
    CHECK(d->n0 == 5);
    REQUIRE(d->premises.size() == 1);
    CHECK(d->premises[0].rule == Rule::R2_SphereProductSum);
    CHECK(d->premises[0].n0 == 3);
    CHECK(replay_derivation(*d, Q));

    CHECK(!derive_sp(real_projective_recipe(7), F2).has_value());
    CHECK(!derive_sp(torus_recipe(4), Q).has_value());

    auto s3 = derive_sp(sphere_recipe(3), CoefficientSpec::integers());
    REQUIRE(s3.has_value());
    CHECK(s3->rule == Rule::R1_Sphere);
    CHECK(s3->n0 == 1);

    // the sum of three S(2)xS(4) prefers the one-node R2 derivation
    auto s2s4 = product_recipe(sphere_recipe(2), sphere_recipe(4));
    auto sum3 = connected_sum_recipe(connected_sum_recipe(s2s4, s2s4), s2s4);
    auto ds = derive_sp(sum3, Q);
    REQUIRE(ds.has_value());
    CHECK(ds->rule == Rule::R2_SphereProductSum);
    CHECK(ds->n0 == 3);
    CHECK(derivation_node_count(*ds) == 1);
}

TEST_CASE("derive_sp falls back to the connected-sum closure when R2 cannot match") {
    auto Q = CoefficientSpec::rationals();
    auto triple = product_recipe(product_recipe(sphere_recipe(2), sphere_recipe(2)), sphere_recipe(2));
    auto sum = connected_sum_recipe(triple, triple);
    auto d = derive_sp(sum, Q);
    REQUIRE(d.has_value());
    CHECK(d->rule == Rule::R3_ConnectedSumClosure);
    CHECK(d->n0 == 5);
    REQUIRE(d->premises.size() == 2);
    CHECK(d->premises[0].rule == Rule::R4_ProductClosure);
    CHECK(replay_derivation(*d, Q));
    CHECK(obstructed_max(build(sum, Q)) == 4);
}

TEST_CASE("derive_sp iterates the product closure") {
    auto Q = CoefficientSpec::rationals();
    auto triple = product_recipe(product_recipe(sphere_recipe(2), sphere_recipe(2)), sphere_recipe(2));
    auto quad = product_recipe(triple, sphere_recipe(2));
    auto d = derive_sp(quad, Q);
    REQUIRE(d.has_value());
    CHECK(d->rule == Rule::R4_ProductClosure);
    CHECK(d->n0 == 7);  // 5 + dim S^2, applied on top of the triple's certificate
    CHECK(d->premises[0].n0 == 5);
    CHECK(replay_derivation(*d, Q));

    auto M = build(quad, Q);
    CHECK(obstructed_max(M) == 6);  // consistent: certificate starts right above
}

TEST_CASE("replay rejects tampered derivations") {
    auto Q = CoefficientSpec::rationals();
    auto triple = product_recipe(product_recipe(sphere_recipe(2), sphere_recipe(2)), sphere_recipe(2));
    auto d = derive_sp(triple, Q);
    REQUIRE(d.has_value());

    auto lowered = *d;
    lowered.n0 = 4;  // claims more than the premises support
    std::vector<std::string> why;
    CHECK(!replay_derivation(lowered, Q, &why));
    CHECK(!why.empty());

    auto forged = *d;
    auto& side = std::get<R4Side>(forged.side);
    side.product_cohp.classes[0] = {2, 2};  // a class whose square vanishes
    side.product_cohp.classes[1] = {2, 2};
    CHECK(!replay_derivation(forged, Q));

    auto wrong_subject = *d;
    wrong_subject.subject = product_recipe(sphere_recipe(3), sphere_recipe(3));
    CHECK(!replay_derivation(wrong_subject, Q));
}

TEST_CASE("soundness: certificates never reach into the obstructed range") {
    auto Q = CoefficientSpec::rationals();
    auto F2 = CoefficientSpec::prime_field(2);
    std::mt19937_64 rng(4242);
    for (int round = 0; round < 25; ++round) {
        bool char2 = round % 2 == 0;
        auto recipe = sgm::testing::random_recipe(8, char2, rng, 128);
        auto M = build(recipe, char2 ? F2 : Q);
        if (M.dimension < 2) continue;
        int n_max = obstructed_max(M);
        auto d = derive_sp(recipe, char2 ? F2 : Q);
        if (d) {
            CAPTURE(recipe_text(*recipe));
            CHECK(d->n0 > n_max);
            CHECK(replay_derivation(*d, char2 ? F2 : Q));
        }
    }
}

}  // TEST_SUITE
