#include "sgm/builders.hpp"

#include <algorithm>
#include <cassert>

namespace sgm {

namespace {

using Sparse = CupTable::Sparse;

std::string tensor_label(const std::string& a, const std::string& b) {
    auto wrap = [](const std::string& s) {
        return s.find("⊗") != std::string::npos ? "(" + s + ")" : s;
    };
    return wrap(a) + "⊗" + wrap(b);
}

/// Truncated polynomial ring on one generator: classes gen^0..gen^q in
/// degrees 0, g, 2g, ..., q*g, with gen^a * gen^b = gen^(a+b) (zero past q).
RingPtr truncated_polynomial_ring(const CoefficientSpec& A, int gen_degree, int truncation_exp,
                                  const std::string& gen_name) {
    int top = gen_degree * truncation_exp;
    GradedBasis basis(top);
    for (int j = 0; j <= truncation_exp; ++j) {
        std::string label = j == 0 ? "1" : (j == 1 ? gen_name : gen_name + "^" + std::to_string(j));
        basis.add_class(j * gen_degree, std::move(label));
    }
    CupTable table(basis);
    for (int a = 0; a <= truncation_exp; ++a)
        for (int b = 0; a + b <= truncation_exp; ++b)
            table.set(a * gen_degree, 0, b * gen_degree, 0, {{0, A.one()}});
    return std::make_shared<CohomologyRing>(A, std::move(basis), std::move(table), ClassRef{top, 0});
}

/// Same ring, new labels. Rings are immutable, so this rebuilds.
ManifoldModel relabeled(const ManifoldModel& m, GradedBasis basis) {
    ManifoldModel out = m;
    out.ring = std::make_shared<CohomologyRing>(m.ring->coeff(), std::move(basis), m.ring->cup_table(),
                                                m.ring->fundamental_class());
    return out;
}

/// Index maps for the tensor basis of a product: the degree-d classes are
/// the pairs (x, y) with deg x + deg y = d, blocks ordered by deg x
/// descending (so x (x) 1 classes precede 1 (x) y ones).
struct KunnethIndex {
    int dim_a, dim_b, dim;
    const GradedBasis* a;
    const GradedBasis* b;
    std::vector<std::vector<int>> offset;  // offset[d][dx], -1 when the block is empty
    std::vector<int> rank;

    KunnethIndex(const GradedBasis& ba, const GradedBasis& bb)
        : dim_a(ba.top_degree()), dim_b(bb.top_degree()), dim(dim_a + dim_b), a(&ba), b(&bb) {
        offset.assign(dim + 1, std::vector<int>(dim + 1, -1));
        rank.assign(dim + 1, 0);
        for (int d = 0; d <= dim; ++d) {
            int at = 0;
            for (int dx = std::min(d, dim_a); dx >= std::max(0, d - dim_b); --dx) {
                int block = ba.rank(dx) * bb.rank(d - dx);
                if (block == 0) continue;
                offset[d][dx] = at;
                at += block;
            }
            rank[d] = at;
        }
    }

    int index(int d, int dx, int i, int j) const { return offset[d][dx] + i * b->rank(d - dx) + j; }
};

}  // namespace

/******** atoms ********/

ManifoldModel build_sphere(int k, const CoefficientSpec& A) {
    if (k < 1) throw Error(errc::invalid_dimension, "sphere dimension must be at least 1");
    GradedBasis basis(k);
    basis.add_class(0, "1");
    basis.add_class(k, "x");
    CupTable table(basis);
    table.set(0, 0, 0, 0, {{0, A.one()}});
    table.set(0, 0, k, 0, {{0, A.one()}});
    table.set(k, 0, 0, 0, {{0, A.one()}});
    // x*x lands in degree 2k > k and is implicitly zero

    ManifoldModel m;
    m.dimension = k;
    m.ring = std::make_shared<CohomologyRing>(A, std::move(basis), std::move(table), ClassRef{k, 0});
    m.orientable = Orientability::Orientable;
    m.free_homology = true;
    m.immersion_trivial_normal_min = k + 1;  // the unit sphere in R^(k+1), trivial normal line bundle
    m.recipe = sphere_recipe(k);
    m.source_expression = recipe_text(*m.recipe);
    return m;
}

ManifoldModel build_torus(int k, const CoefficientSpec& A) {
    if (k < 1) throw Error(errc::invalid_dimension, "torus dimension must be at least 1");

    ManifoldModel m = build_sphere(1, A);
    for (int j = 2; j <= k; ++j) m = kunneth_product(m, build_sphere(1, A));

    // Exterior-algebra labels: the degree-d classes of the iterated product
    // correspond to d-element subsets of {1..k}; with left-factor-first
    // block order the subsets without the new factor come first.
    std::vector<std::vector<std::vector<int>>> subsets = {{{}}, {{1}}};
    for (int j = 2; j <= k; ++j) {
        std::vector<std::vector<std::vector<int>>> next(j + 1);
        for (int d = 0; d <= j; ++d) {
            if (d < static_cast<int>(subsets.size()))
                for (const auto& s : subsets[d]) next[d].push_back(s);
            if (d >= 1)
                for (auto s : subsets[d - 1]) {
                    s.push_back(j);
                    next[d].push_back(std::move(s));
                }
        }
        subsets = std::move(next);
    }
    GradedBasis basis(k);
    for (int d = 0; d <= k; ++d)
        for (const auto& s : subsets[d]) {
            std::string label;
            for (int g : s) label += (label.empty() ? "e" : "*e") + std::to_string(g);
            basis.add_class(d, label.empty() ? "1" : label);
        }
    m = relabeled(m, std::move(basis));

    m.orientable = Orientability::Orientable;
    m.free_homology = true;
    m.immersion_trivial_normal_min = k + 1;  // parallelizable; embeds in one dimension up
    m.recipe = torus_recipe(k);
    m.source_expression = recipe_text(*m.recipe);
    return m;
}

ManifoldModel build_real_projective(int mdim, const CoefficientSpec& A) {
    if (mdim < 1) throw Error(errc::invalid_dimension, "projective space dimension must be at least 1");
    if (A.kind() != CoeffKind::PrimeField || A.prime() != 2)
        throw Error(errc::unsupported_coefficients,
                    "RP(" + std::to_string(mdim) + ") is supported over Z/2 only (integral cohomology has torsion)");

    ManifoldModel m;
    m.dimension = mdim;
    m.ring = truncated_polynomial_ring(A, 1, mdim, "u");
    m.orientable = mdim % 2 == 1 ? Orientability::Orientable : Orientability::NonOrientable;
    m.free_homology = true;
    m.recipe = real_projective_recipe(mdim);
    m.source_expression = recipe_text(*m.recipe);
    return m;
}

ManifoldModel build_complex_projective(int k, const CoefficientSpec& A) {
    if (k < 1) throw Error(errc::invalid_dimension, "complex projective dimension parameter must be at least 1");

    ManifoldModel m;
    m.dimension = 2 * k;
    m.ring = truncated_polynomial_ring(A, 2, k, "c");
    m.orientable = Orientability::Orientable;
    m.free_homology = true;
    m.recipe = complex_projective_recipe(k);
    m.source_expression = recipe_text(*m.recipe);
    return m;
}

/******** Kunneth products ********/

ManifoldModel kunneth_product(const ManifoldModel& m1, const ManifoldModel& m2) {
    const auto& A = m1.ring->coeff();
    if (A != m2.ring->coeff())
        throw Error(errc::coefficient_mismatch, "product factors use different coefficient rings");
    if (!m1.free_homology || !m2.free_homology)
        throw Error(errc::torsion_unsupported, "Kunneth product requires free graded pieces on both factors");

    const GradedBasis& ba = m1.ring->basis();
    const GradedBasis& bb = m2.ring->basis();
    KunnethIndex ix(ba, bb);

    GradedBasis basis(ix.dim);
    for (int d = 0; d <= ix.dim; ++d)
        for (int dx = std::min(d, ix.dim_a); dx >= std::max(0, d - ix.dim_b); --dx)
            for (int i = 0; i < ba.rank(dx); ++i)
                for (int j = 0; j < bb.rank(d - dx); ++j)
                    basis.add_class(d, tensor_label(ba.label({dx, i}), bb.label({d - dx, j})));

    // (x (x) y) * (x' (x) y') = (-1)^(deg y * deg x') (x x') (x) (y y')
    CupTable table(basis);
    const CupTable& ta = m1.ring->cup_table();
    const CupTable& tb = m2.ring->cup_table();
    for (int d1 = 0; d1 <= ix.dim; ++d1)
        for (int dx1 = std::max(0, d1 - ix.dim_b); dx1 <= std::min(d1, ix.dim_a); ++dx1) {
            int dy1 = d1 - dx1;
            for (int d2 = 0; d1 + d2 <= ix.dim; ++d2)
                for (int dx2 = std::max(0, d2 - ix.dim_b); dx2 <= std::min(d2, ix.dim_a); ++dx2) {
                    int dy2 = d2 - dx2;
                    bool flip = (dy1 % 2 == 1) && (dx2 % 2 == 1);
                    for (int i1 = 0; i1 < ba.rank(dx1); ++i1)
                        for (int j1 = 0; j1 < bb.rank(dy1); ++j1)
                            for (int i2 = 0; i2 < ba.rank(dx2); ++i2) {
                                const Sparse& sx = ta.get(dx1, i1, dx2, i2);
                                if (sx.empty()) continue;
                                for (int j2 = 0; j2 < bb.rank(dy2); ++j2) {
                                    const Sparse& sy = tb.get(dy1, j1, dy2, j2);
                                    if (sy.empty()) continue;
                                    Sparse out;
                                    out.reserve(sx.size() * sy.size());
                                    for (const auto& [ia, ca] : sx)
                                        for (const auto& [jb, cb] : sy) {
                                            Scalar v = A.mul(ca, cb);
                                            if (flip) v = A.neg(v);
                                            out.emplace_back(
                                                ix.index(d1 + d2, dx1 + dx2, ia, jb), std::move(v));
                                        }
                                    table.set(d1, ix.index(d1, dx1, i1, j1), d2,
                                              ix.index(d2, dx2, i2, j2), std::move(out));
                                }
                            }
                }
        }

    ManifoldModel m;
    m.dimension = ix.dim;
    std::optional<ClassRef> fundamental;
    if (ix.rank[ix.dim] == 1) fundamental = ClassRef{ix.dim, 0};
    m.ring = std::make_shared<CohomologyRing>(A, std::move(basis), std::move(table), fundamental);
    m.orientable = (m1.orientable == Orientability::Orientable && m2.orientable == Orientability::Orientable)
                       ? Orientability::Orientable
                       : Orientability::NonOrientable;
    m.free_homology = true;
    if (m1.immersion_trivial_normal_min && m2.immersion_trivial_normal_min)
        m.immersion_trivial_normal_min = *m1.immersion_trivial_normal_min + *m2.immersion_trivial_normal_min;
    if (m1.recipe && m2.recipe) {
        m.recipe = product_recipe(m1.recipe, m2.recipe);
        m.source_expression = recipe_text(*m.recipe);
    } else {
        m.source_expression = m1.source_expression + " x " + m2.source_expression;
    }
    return m;
}

/******** connected sums ********/

ManifoldModel connected_sum(const ManifoldModel& m1, const ManifoldModel& m2) {
    const auto& A = m1.ring->coeff();
    if (A != m2.ring->coeff())
        throw Error(errc::coefficient_mismatch, "connected-sum summands use different coefficient rings");
    const int m = m1.dimension;
    if (m2.dimension != m)
        throw Error(errc::dimension_mismatch, "connected sum of dimensions " + std::to_string(m) +
                                                  " and " + std::to_string(m2.dimension));
    if (m < 2) throw Error(errc::dimension_mismatch, "connected sum requires dimension at least 2");
    if (A.characteristic() != 2 &&
        (m1.orientable != Orientability::Orientable || m2.orientable != Orientability::Orientable))
        throw Error(errc::orientability_violation,
                    "non-orientable connected sums are supported over characteristic 2 only");

    const GradedBasis& ba = m1.ring->basis();
    const GradedBasis& bb = m2.ring->basis();
    if (ba.rank(0) != 1 || bb.rank(0) != 1 || ba.rank(m) != 1 || bb.rank(m) != 1)
        throw Error(errc::invalid_argument, "connected sum requires rank 1 in degrees 0 and m");

    GradedBasis basis(m);
    basis.add_class(0, "1");
    for (int d = 1; d < m; ++d) {
        std::vector<std::string> taken;
        for (int i = 0; i < ba.rank(d); ++i) {
            taken.push_back(ba.label({d, i}));
            basis.add_class(d, taken.back());
        }
        // second summand's labels get primes, more of them under nesting
        for (int i = 0; i < bb.rank(d); ++i) {
            std::string label = bb.label({d, i}) + "'";
            while (std::find(taken.begin(), taken.end(), label) != taken.end()) label += "'";
            basis.add_class(d, label);
            taken.push_back(std::move(label));
        }
    }
    basis.add_class(m, ba.label({m, 0}));

    // index of a summand class inside the sum; degree-m classes merge to 0
    auto map_index = [&](bool second, int d, int i) {
        if (d == 0 || d == m) return 0;
        return second ? ba.rank(d) + i : i;
    };
    auto map_sparse = [&](bool second, int d, const Sparse& s) {
        Sparse out;
        out.reserve(s.size());
        for (const auto& [k, c] : s) out.emplace_back(map_index(second, d, k), c);
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    };

    CupTable table(basis);
    // unit row and column
    for (int d = 0; d <= m; ++d)
        for (int i = 0; i < basis.rank(d); ++i) {
            table.set(0, 0, d, i, {{i, A.one()}});
            if (d > 0) table.set(d, i, 0, 0, {{i, A.one()}});
        }
    // products inside one summand; cross products of positive-degree
    // classes vanish in every degree and stay unset
    for (int side = 0; side < 2; ++side) {
        const GradedBasis& bs = side ? bb : ba;
        const CupTable& ts = side ? m2.ring->cup_table() : m1.ring->cup_table();
        for (int d1 = 1; d1 < m; ++d1)
            for (int d2 = 1; d1 + d2 <= m; ++d2)
                for (int i1 = 0; i1 < bs.rank(d1); ++i1)
                    for (int i2 = 0; i2 < bs.rank(d2); ++i2) {
                        const Sparse& s = ts.get(d1, i1, d2, i2);
                        if (s.empty()) continue;
                        table.set(d1, map_index(side, d1, i1), d2, map_index(side, d2, i2),
                                  map_sparse(side, d1 + d2, s));
                    }
    }

    ManifoldModel out;
    out.dimension = m;
    out.ring = std::make_shared<CohomologyRing>(A, std::move(basis), std::move(table), ClassRef{m, 0});
    out.orientable = (m1.orientable == Orientability::Orientable && m2.orientable == Orientability::Orientable)
                         ? Orientability::Orientable
                         : Orientability::NonOrientable;
    out.free_homology = m1.free_homology && m2.free_homology;
    if (m1.immersion_trivial_normal_min && m2.immersion_trivial_normal_min)
        out.immersion_trivial_normal_min =
            std::max({*m1.immersion_trivial_normal_min, *m2.immersion_trivial_normal_min, m + 1});
    if (m1.recipe && m2.recipe) {
        out.recipe = connected_sum_recipe(m1.recipe, m2.recipe);
        out.source_expression = recipe_text(*out.recipe);
    } else {
        out.source_expression = m1.source_expression + " # " + m2.source_expression;
    }
    return out;
}

ManifoldModel build(const RecipePtr& recipe, const CoefficientSpec& A) {
    if (!recipe) throw Error(errc::invalid_argument, "empty recipe");
    ManifoldModel m;
    switch (recipe->kind) {
        case Recipe::Kind::Sphere: m = build_sphere(recipe->param, A); break;
        case Recipe::Kind::Torus: m = build_torus(recipe->param, A); break;
        case Recipe::Kind::RealProjective: m = build_real_projective(recipe->param, A); break;
        case Recipe::Kind::ComplexProjective: m = build_complex_projective(recipe->param, A); break;
        case Recipe::Kind::Product:
            m = kunneth_product(build(recipe->left, A), build(recipe->right, A));
            break;
        case Recipe::Kind::ConnectedSum:
            m = connected_sum(build(recipe->left, A), build(recipe->right, A));
            break;
    }
    m.recipe = recipe;  // keep the caller's nodes so recipe identity survives composition
    m.source_expression = recipe_text(*recipe);
    return m;
}

}  // namespace sgm
