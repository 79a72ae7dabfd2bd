#include <doctest.h>

#include "test_helpers.hpp"

using namespace sgm;
using sgm::testing::random_element;
using sgm::testing::random_nonempty_degree;

TEST_SUITE("ring_core") {

TEST_CASE("coefficient rings: construction and canonical arithmetic") {
    auto Q = CoefficientSpec::rationals();
    auto Z = CoefficientSpec::integers();
    auto F2 = CoefficientSpec::prime_field(2);
    auto F7 = CoefficientSpec::prime_field(7);

    CHECK(Q.is_field());
    CHECK(!Z.is_field());
    CHECK(F2.characteristic() == 2);
    CHECK_THROWS_AS(CoefficientSpec::prime_field(4), Error);
    CHECK_THROWS_AS(CoefficientSpec::prime_field(1), Error);

    CHECK(F7.add(F7.from_int(5), F7.from_int(4)) == F7.from_int(2));
    CHECK(F7.mul(F7.from_int(3), F7.from_int(5)) == F7.from_int(1));
    CHECK(F7.neg(F7.from_int(2)) == F7.from_int(5));
    CHECK(F7.from_int(-2) == F7.from_int(5));

    // 1/2 is a unit mod 7 but not an integer
    Scalar half(1, 2);
    half.canonicalize();
    CHECK(F7.normalize(half) == F7.from_int(4));
    CHECK_THROWS_AS(Z.normalize(half), Error);

    CHECK(*Q.inverse(Scalar(-3)) == Scalar(-1, 3));
    CHECK(!Z.inverse(Scalar(2)).has_value());
    CHECK(*Z.inverse(Scalar(-1)) == Scalar(-1));
    CHECK(!F7.inverse(F7.zero()).has_value());

    CHECK(Q.name() == "Q");
    CHECK(Z.name() == "Z");
    CHECK(F2.name() == "Z/2");
    CHECK(Q.to_string(Scalar(3, 2)) == "3/2");
    CHECK(Q.to_string(Scalar(-4)) == "-4");
}

TEST_CASE("add: identities and exactness") {
    auto Z = CoefficientSpec::integers();
    auto S7 = build_sphere(7, Z);
    auto x = basis_element(S7.ring, {7, 0});

    CHECK(add(x, zero_element(S7.ring, 7)) == x);  // x + 0 = x

    // 2a + 3a = 5a
    auto two_a = scale(Scalar(2), x);
    auto three_a = scale(Scalar(3), x);
    CHECK(add(two_a, three_a) == scale(Scalar(5), x));

    // u + u = 0 in characteristic 2
    auto F2 = CoefficientSpec::prime_field(2);
    auto RP3 = build_real_projective(3, F2);
    auto u = basis_element(RP3.ring, {1, 0});
    CHECK(is_zero(add(u, u)));
    CHECK(add(u, u).degree == 1);  // degree retained on the zero element

    CHECK_THROWS_AS(add(x, basis_element(S7.ring, {0, 0})), Error);
    auto other = build_sphere(7, Z);
    CHECK_THROWS_AS(add(x, basis_element(other.ring, {7, 0})), Error);
}

TEST_CASE("cup: truncated powers, unit law, square of a sphere class") {
    auto F2 = CoefficientSpec::prime_field(2);
    auto RP7 = build_real_projective(7, F2);
    auto u = basis_element(RP7.ring, {1, 0});
    auto uu = cup(u, u);
    CHECK(uu == basis_element(RP7.ring, {2, 0}));
    CHECK(!is_zero(uu));

    auto unit = basis_element(RP7.ring, {0, 0});
    CHECK(cup(unit, uu) == uu);
    CHECK(cup(uu, unit) == uu);

    auto Q = CoefficientSpec::rationals();
    auto s2s2 = kunneth_product(build_sphere(2, Q), build_sphere(2, Q));
    // both degree-2 generators square to zero: the factor top classes do
    for (int i = 0; i < s2s2.ring->rank(2); ++i) {
        auto a = basis_element(s2s2.ring, {2, i});
        CHECK(is_zero(cup(a, a)));
    }
    // .. but their mixed product is the top class
    auto mixed = cup(basis_element(s2s2.ring, {2, 0}), basis_element(s2s2.ring, {2, 1}));
    CHECK(!is_zero(mixed));
    CHECK(mixed.degree == 4);

    auto other = build_sphere(2, Q);
    CHECK_THROWS_AS(cup(basis_element(s2s2.ring, {2, 0}), basis_element(other.ring, {2, 0})), Error);
}

TEST_CASE("products past the top degree clamp to canonical zeros") {
    auto Q = CoefficientSpec::rationals();
    auto CP2 = build_complex_projective(2, Q);
    auto c = basis_element(CP2.ring, {2, 0});
    auto c2 = cup(c, c);
    CHECK(!is_zero(c2));
    auto c3 = cup(c2, c);
    CHECK(c3.degree == 6);
    CHECK(c3.coeffs.empty());  // rank 0 above the top degree
    CHECK(is_zero(c3));
    CHECK(is_zero(cup(c3, c)));
}

TEST_CASE("product_of_sequence: iterated cups") {
    auto F2 = CoefficientSpec::prime_field(2);
    auto RP7 = build_real_projective(7, F2);
    auto u = basis_element(RP7.ring, {1, 0});
    auto u7 = product_of_sequence(std::vector<RingElement>(7, u));
    CHECK(u7 == basis_element(RP7.ring, {7, 0}));  // the top class, nonzero

    auto Q = CoefficientSpec::rationals();
    auto T3 = build_torus(3, Q);
    std::vector<RingElement> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(basis_element(T3.ring, {1, i}));
    auto top = product_of_sequence(gens);
    CHECK(top.degree == 3);
    CHECK(!is_zero(top));

    CHECK(product_of_sequence({u}) == u);
    CHECK_THROWS_AS(product_of_sequence({}), Error);
}

TEST_CASE("bilinearity and graded commutativity on random elements") {
    auto Q = CoefficientSpec::rationals();
    auto F5 = CoefficientSpec::prime_field(5);
    std::mt19937_64 rng(2024);

    std::vector<ManifoldModel> models;
    models.push_back(build_torus(4, Q));
    models.push_back(connected_sum(kunneth_product(build_sphere(2, Q), build_sphere(2, Q)),
                                   kunneth_product(build_sphere(2, Q), build_sphere(2, Q))));
    models.push_back(build_complex_projective(3, F5));
    models.push_back(build_real_projective(5, CoefficientSpec::prime_field(2)));

    for (const auto& M : models) {
        for (int round = 0; round < 40; ++round) {
            int d1 = random_nonempty_degree(M.ring, rng);
            int d2 = random_nonempty_degree(M.ring, rng);
            auto x = random_element(M.ring, d1, rng);
            auto x2 = random_element(M.ring, d1, rng);
            auto y = random_element(M.ring, d2, rng);

            CHECK(cup(add(x, x2), y) == add(cup(x, y), cup(x2, y)));
            CHECK(cup(y, add(x, x2)) == add(cup(y, x), cup(y, x2)));

            bool flip = d1 % 2 == 1 && d2 % 2 == 1;
            auto yx = cup(y, x);
            CHECK(cup(x, y) == (flip ? scale(Scalar(-1), yx) : yx));
        }
    }
}

TEST_CASE("associativity on random elements") {
    auto Q = CoefficientSpec::rationals();
    auto M = kunneth_product(build_torus(2, Q), build_sphere(2, Q));
    std::mt19937_64 rng(7);
    for (int round = 0; round < 60; ++round) {
        auto x = random_element(M.ring, random_nonempty_degree(M.ring, rng), rng);
        auto y = random_element(M.ring, random_nonempty_degree(M.ring, rng), rng);
        auto z = random_element(M.ring, random_nonempty_degree(M.ring, rng), rng);
        CHECK(cup(cup(x, y), z) == cup(x, cup(y, z)));
    }
}

TEST_CASE("validate_ring: builder outputs are valid, including duality") {
    auto Q = CoefficientSpec::rationals();
    auto F2 = CoefficientSpec::prime_field(2);

    CHECK(validate_ring(*build_sphere(1, Q).ring).ok());
    CHECK(validate_ring(*build_torus(3, CoefficientSpec::integers()).ring).ok());
    CHECK(validate_ring(*build_real_projective(6, F2).ring).ok());
    CHECK(validate_ring(*build_complex_projective(3, Q).ring).ok());  // 1x1 pairings in degrees (2,4)
    CHECK(validate_ring(*kunneth_product(build_sphere(3, Q), build_sphere(5, Q)).ring).ok());
}

TEST_CASE("validate_ring: hand-mutated tables are reported with the offending pair") {
    auto Q = CoefficientSpec::rationals();

    // exterior algebra on two degree-1 generators, with a broken sign
    GradedBasis basis(2);
    basis.add_class(0, "1");
    basis.add_class(1, "a");
    basis.add_class(1, "b");
    basis.add_class(2, "ab");
    CupTable table(basis);
    for (int d = 0; d <= 2; ++d)
        for (int i = 0; i < basis.rank(d); ++i) {
            table.set(0, 0, d, i, {{i, Q.one()}});
            if (d > 0) table.set(d, i, 0, 0, {{i, Q.one()}});
        }
    table.set(1, 0, 1, 1, {{0, Q.one()}});
    table.set(1, 1, 1, 0, {{0, Q.one()}});  // should be -1: table(b,a) != -table(a,b)

    CohomologyRing broken(Q, basis, table, ClassRef{2, 0});
    auto report = validate_ring(broken);
    CHECK(!report.ok());
    bool found = false;
    for (const auto& v : report.violations)
        if (v.kind == Violation::Kind::GradedCommutativity && v.detail.find("a") != std::string::npos &&
            v.detail.find("b") != std::string::npos)
            found = true;
    CHECK(found);

    // fixing the sign makes it valid
    table.set(1, 1, 1, 0, {{0, Q.neg(Q.one())}});
    CohomologyRing fixed(Q, basis, table, ClassRef{2, 0});
    CHECK(validate_ring(fixed).ok());

    // degenerate pairing: drop the top product entirely
    CupTable degenerate(basis);
    for (int d = 0; d <= 2; ++d)
        for (int i = 0; i < basis.rank(d); ++i) {
            degenerate.set(0, 0, d, i, {{i, Q.one()}});
            if (d > 0) degenerate.set(d, i, 0, 0, {{i, Q.one()}});
        }
    CohomologyRing torus_like(Q, basis, degenerate, ClassRef{2, 0});
    auto dual_report = validate_ring(torus_like);
    bool degenerate_found = false;
    for (const auto& v : dual_report.violations)
        if (v.kind == Violation::Kind::DualityDegenerate) degenerate_found = true;
    CHECK(degenerate_found);
}

TEST_CASE("validate_ring: non-canonical prime-field coefficients are flagged") {
    auto F2 = CoefficientSpec::prime_field(2);
    GradedBasis basis(1);
    basis.add_class(0, "1");
    basis.add_class(1, "u");
    CupTable table(basis);
    table.set(0, 0, 0, 0, {{0, Scalar(1)}});
    table.set(0, 0, 1, 0, {{0, Scalar(3)}});  // 3 is not a canonical residue mod 2
    table.set(1, 0, 0, 0, {{0, Scalar(1)}});
    CohomologyRing ring(F2, basis, table, std::nullopt);
    auto report = validate_ring(ring);
    bool found = false;
    for (const auto& v : report.violations)
        if (v.kind == Violation::Kind::EntryShape) found = true;
    CHECK(found);
}

TEST_CASE("cup table rejects entries outside the graded range") {
    auto Q = CoefficientSpec::rationals();
    GradedBasis basis(3);
    basis.add_class(0, "1");
    basis.add_class(2, "a");
    CupTable table(basis);
    CHECK_THROWS_AS(table.set(2, 0, 2, 0, {{0, Q.one()}}), Error);  // degree 4 > top 3
    CHECK_THROWS_AS(table.set(0, 1, 0, 0, {{0, Q.one()}}), Error);  // index out of range
    CHECK_THROWS_AS(table.set(-1, 0, 0, 0, {}), Error);
    CHECK(table.get(2, 0, 2, 0).empty());  // implicit zero past the top degree
}

TEST_CASE("element printing uses labels") {
    auto Q = CoefficientSpec::rationals();
    auto T2 = build_torus(2, Q);
    auto e1 = basis_element(T2.ring, {1, 0});
    auto sum = add(scale(Scalar(2), e1), basis_element(T2.ring, {1, 1}));
    auto text = element_to_string(sum);
    CHECK(text.find("e1") != std::string::npos);
    CHECK(text.find("e2") != std::string::npos);
    CHECK(text.find("2") != std::string::npos);
}

}  // TEST_SUITE
