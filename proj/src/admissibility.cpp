#include "sgm/admissibility.hpp"

#include <algorithm>
#include <map>

#include "sgm/builders.hpp"

namespace sgm {

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::R1_Sphere: return "R1_Sphere";
        case Rule::R2_SphereProductSum: return "R2_SphereProductSum";
        case Rule::R3_ConnectedSumClosure: return "R3_ConnectedSumClosure";
        case Rule::R4_ProductClosure: return "R4_ProductClosure";
    }
    return "?";
}

int derivation_node_count(const SpDerivation& d) {
    int n = 1;
    for (const auto& p : d.premises) n += derivation_node_count(p);
    return n;
}

/******** R1 ********/

RuleResult rule_r1_sphere(const ManifoldModel& M) {
    if (!M.recipe || M.recipe->kind != Recipe::Kind::Sphere)
        return {std::nullopt, "not built as a sphere"};
    SpDerivation d;
    d.rule = Rule::R1_Sphere;
    d.n0 = 1;
    d.subject = M.recipe;
    d.side = R1Side{M.dimension};
    return {std::move(d), {}};
}

/******** R2 ********/

namespace {

bool collect_two_sphere_products(const RecipePtr& r, std::vector<std::pair<int, int>>& factors) {
    if (!r) return false;
    if (r->kind == Recipe::Kind::ConnectedSum)
        return collect_two_sphere_products(r->left, factors) &&
               collect_two_sphere_products(r->right, factors);
    if (r->kind == Recipe::Kind::Product && r->left && r->right &&
        r->left->kind == Recipe::Kind::Sphere && r->right->kind == Recipe::Kind::Sphere) {
        factors.emplace_back(r->left->param, r->right->param);
        return true;
    }
    return false;
}

}  // namespace

RuleResult rule_r2_sphere_product_sum(const RecipePtr& recipe) {
    std::vector<std::pair<int, int>> factors;
    if (!collect_two_sphere_products(recipe, factors) || factors.empty())
        return {std::nullopt, "not a connected sum of products of exactly two spheres"};
    R2Side side;
    side.dimension = static_cast<int>(recipe_dimension(*recipe));
    int max_k = 0;
    for (auto [a, b] : factors) {
        int k = std::min(a, b);  // canonical small factor
        side.canonical_ks.push_back(k);
        max_k = std::max(max_k, k);
    }
    SpDerivation d;
    d.rule = Rule::R2_SphereProductSum;
    d.n0 = max_k + 1;  // every summand needs its small factor below the target dimension
    d.subject = recipe;
    d.side = std::move(side);
    return {std::move(d), {}};
}

/******** R3 ********/

RuleResult rule_r3_connected_sum(const ManifoldModel& m1, const SpDerivation& d1,
                                 const ManifoldModel& m2, const SpDerivation& d2) {
    if (m1.ring->coeff() != m2.ring->coeff()) return {std::nullopt, "coefficient rings differ"};
    const int m = m1.dimension;
    if (m2.dimension != m) return {std::nullopt, "summand dimensions differ"};
    if (m <= 2) return {std::nullopt, "connected-sum closure requires dimension above 2"};

    // Sp_{>=a} weakens to Sp_{>=b} for b >= a, and CohP at level t implies
    // CohP at every smaller level, so the least common candidate decides
    // applicability: if it fails CohP, every larger level fails too.
    int n0 = std::max({d1.n0, d2.n0, 2});
    if (n0 >= m) return {std::nullopt, "no common level below the dimension"};
    auto w1 = cohp_check(m1, n0 - 1);
    if (!w1)
        return {std::nullopt,
                "first summand fails CohP at level " + std::to_string(n0 - 1)};
    auto w2 = cohp_check(m2, n0 - 1);
    if (!w2)
        return {std::nullopt,
                "second summand fails CohP at level " + std::to_string(n0 - 1)};

    SpDerivation d;
    d.rule = Rule::R3_ConnectedSumClosure;
    d.n0 = n0;
    d.subject = (m1.recipe && m2.recipe) ? connected_sum_recipe(m1.recipe, m2.recipe) : nullptr;
    d.premises = {d1, d2};
    d.side = R3Side{m, std::move(*w1), std::move(*w2)};
    return {std::move(d), {}};
}

/******** R4 ********/

RuleResult rule_r4_product(const ManifoldModel& base, const SpDerivation& base_derivation,
                           const ManifoldModel& factor, int n0) {
    if (base.ring->coeff() != factor.ring->coeff()) return {std::nullopt, "coefficient rings differ"};
    const int md = base.dimension;
    if (md <= 2) return {std::nullopt, "base dimension must exceed 2"};
    const int level = n0 - factor.dimension;  // premise level forced by the factor's dimension
    if (level < base_derivation.n0)
        return {std::nullopt, "premise level " + std::to_string(level) +
                                  " is below the derived threshold " + std::to_string(base_derivation.n0)};
    if (level <= 1 || level >= md)
        return {std::nullopt, "premise level " + std::to_string(level) + " outside (1, base dim)"};
    if (!base.free_homology) return {std::nullopt, "base homology is not free"};

    auto base_cohp = cohp_check(base, level - 1);
    if (!base_cohp)
        return {std::nullopt, "base fails CohP at level " + std::to_string(level - 1)};

    const int bound = md - level + 1;
    auto factor_exact = cohp_check_exact(factor, bound, n0 - level);
    if (!factor_exact)
        return {std::nullopt,
                "hypothesis (a) fails: no nonvanishing product on the factor with degrees <= " +
                    std::to_string(bound) + " summing to " + std::to_string(n0 - level)};
    if (!factor.free_homology) return {std::nullopt, "hypothesis (b) fails: factor homology is not free"};
    if (!immerses_with_trivial_normal(factor, n0))
        return {std::nullopt,
                "hypothesis (c) fails: no declared trivial-normal immersion into " +
                    std::to_string(n0) + "-space"};

    ManifoldModel product = kunneth_product(base, factor);
    auto product_cohp = cohp_check(product, n0 - 1);
    if (!product_cohp)
        return {std::nullopt, "conclusion CohP check failed on the product (unexpected)"};

    R4Side side;
    side.base_dim = md;
    side.base_level = level;
    side.factor_dim = factor.dimension;
    side.factor_degree_bound = bound;
    side.base_cohp = std::move(*base_cohp);
    side.factor_exact = std::move(*factor_exact);
    side.product_cohp = std::move(*product_cohp);
    side.immersion_min = *factor.immersion_trivial_normal_min;
    side.base_free = base.free_homology;
    side.factor_free = factor.free_homology;

    SpDerivation d;
    d.rule = Rule::R4_ProductClosure;
    d.n0 = n0;
    d.subject = product.recipe;
    d.premises = {base_derivation};
    d.side = std::move(side);
    return {std::move(d), {}};
}

/******** proof search ********/

namespace {

struct DeriveContext {
    CoefficientSpec coeff;
    std::map<const Recipe*, ManifoldModel> models;
    std::map<const Recipe*, std::optional<SpDerivation>> memo;

    const ManifoldModel& model(const RecipePtr& r) {
        auto it = models.find(r.get());
        if (it == models.end()) it = models.emplace(r.get(), build(r, coeff)).first;
        return it->second;
    }
};

bool better(const SpDerivation& a, const SpDerivation& b) {
    if (a.n0 != b.n0) return a.n0 < b.n0;
    int na = derivation_node_count(a), nb = derivation_node_count(b);
    if (na != nb) return na < nb;
    return static_cast<int>(a.rule) < static_cast<int>(b.rule);
}

std::optional<SpDerivation> derive(const RecipePtr& recipe, DeriveContext& ctx) {
    auto memo = ctx.memo.find(recipe.get());
    if (memo != ctx.memo.end()) return memo->second;

    std::vector<SpDerivation> candidates;
    if (recipe->kind == Recipe::Kind::Sphere) {
        if (auto r = rule_r1_sphere(ctx.model(recipe)); r.derivation)
            candidates.push_back(std::move(*r.derivation));
    }
    if (auto r = rule_r2_sphere_product_sum(recipe); r.derivation)
        candidates.push_back(std::move(*r.derivation));

    if (recipe->kind == Recipe::Kind::ConnectedSum) {
        auto dl = derive(recipe->left, ctx);
        auto dr = derive(recipe->right, ctx);
        if (dl && dr) {
            if (auto r = rule_r3_connected_sum(ctx.model(recipe->left), *dl,
                                               ctx.model(recipe->right), *dr);
                r.derivation) {
                r.derivation->subject = recipe;
                candidates.push_back(std::move(*r.derivation));
            }
        }
    }

    if (recipe->kind == Recipe::Kind::Product) {
        for (auto [base_r, factor_r] :
             {std::pair{recipe->left, recipe->right}, std::pair{recipe->right, recipe->left}}) {
            auto base_d = derive(base_r, ctx);
            if (!base_d) continue;
            const ManifoldModel& base = ctx.model(base_r);
            const ManifoldModel& factor = ctx.model(factor_r);
            // A derivation for Sp_{>=a} also certifies every level above a,
            // so scan premise levels upward and keep the first success
            // (least n0 for this split).
            for (int level = std::max(base_d->n0, 2); level < base.dimension; ++level) {
                auto r = rule_r4_product(base, *base_d, factor, level + factor.dimension);
                if (r.derivation) {
                    r.derivation->subject = recipe;
                    candidates.push_back(std::move(*r.derivation));
                    break;
                }
            }
        }
    }

    std::optional<SpDerivation> bestd;
    for (auto& c : candidates)
        if (!bestd || better(c, *bestd)) bestd = std::move(c);
    ctx.memo[recipe.get()] = bestd;
    return bestd;
}

}  // namespace

std::optional<SpDerivation> derive_sp(const RecipePtr& recipe, const CoefficientSpec& coeff) {
    if (!recipe) return std::nullopt;
    DeriveContext ctx{coeff, {}, {}};
    return derive(recipe, ctx);
}

/******** replay ********/

namespace {

bool fail(std::vector<std::string>* failures, std::string why) {
    if (failures) failures->push_back(std::move(why));
    return false;
}

bool replay_cohp_witness(const ManifoldModel& M, const ObstructionWitness& w, int expected_level,
                         std::vector<std::string>* failures, const char* what) {
    if (w.target_n0 != expected_level)
        return fail(failures, std::string(what) + ": recorded level differs from the rule's requirement");
    if (!witness_meets_cohp_bounds(w, M.dimension, expected_level))
        return fail(failures, std::string(what) + ": witness degrees violate the CohP bounds");
    if (!witness_replays(M, w))
        return fail(failures, std::string(what) + ": witness product does not re-evaluate");
    return true;
}

}  // namespace

bool replay_derivation(const SpDerivation& d, const CoefficientSpec& coeff,
                       std::vector<std::string>* failures) {
    if (!d.subject) return fail(failures, "derivation lacks a subject recipe");

    switch (d.rule) {
        case Rule::R1_Sphere: {
            if (d.subject->kind != Recipe::Kind::Sphere)
                return fail(failures, "R1 subject is not a sphere");
            if (d.n0 != 1) return fail(failures, "R1 concludes a level other than 1");
            return true;
        }
        case Rule::R2_SphereProductSum: {
            auto r = rule_r2_sphere_product_sum(d.subject);
            if (!r.derivation) return fail(failures, "R2 pattern does not match: " + r.reason);
            if (r.derivation->n0 != d.n0) return fail(failures, "R2 threshold differs on re-check");
            const auto* side = std::get_if<R2Side>(&d.side);
            const auto& fresh = std::get<R2Side>(r.derivation->side);
            if (!side || side->canonical_ks != fresh.canonical_ks || side->dimension != fresh.dimension)
                return fail(failures, "R2 side conditions differ on re-check");
            return true;
        }
        case Rule::R3_ConnectedSumClosure: {
            if (d.subject->kind != Recipe::Kind::ConnectedSum || d.premises.size() != 2)
                return fail(failures, "R3 needs a connected-sum subject and two premises");
            const auto* side = std::get_if<R3Side>(&d.side);
            if (!side) return fail(failures, "R3 side conditions missing");
            for (const auto& p : d.premises)
                if (!replay_derivation(p, coeff, failures)) return false;
            if (!recipe_equal(*d.premises[0].subject, *d.subject->left) ||
                !recipe_equal(*d.premises[1].subject, *d.subject->right))
                return fail(failures, "R3 premises do not cover the summands");
            ManifoldModel m1 = build(d.subject->left, coeff);
            ManifoldModel m2 = build(d.subject->right, coeff);
            if (m1.dimension != side->dimension || m2.dimension != side->dimension)
                return fail(failures, "R3 dimensions differ on re-check");
            if (side->dimension <= 2) return fail(failures, "R3 dimension must exceed 2");
            if (d.n0 <= 1 || d.n0 >= side->dimension) return fail(failures, "R3 level out of range");
            if (d.premises[0].n0 > d.n0 || d.premises[1].n0 > d.n0)
                return fail(failures, "R3 level below a premise threshold");
            return replay_cohp_witness(m1, side->cohp_left, d.n0 - 1, failures, "R3 left CohP") &&
                   replay_cohp_witness(m2, side->cohp_right, d.n0 - 1, failures, "R3 right CohP");
        }
        case Rule::R4_ProductClosure: {
            if (d.subject->kind != Recipe::Kind::Product || d.premises.size() != 1)
                return fail(failures, "R4 needs a product subject and one premise");
            const auto* side = std::get_if<R4Side>(&d.side);
            if (!side) return fail(failures, "R4 side conditions missing");
            if (!replay_derivation(d.premises[0], coeff, failures)) return false;
            // the premise covers one factor of the product; the other is F
            RecipePtr base_r, factor_r;
            if (recipe_equal(*d.premises[0].subject, *d.subject->left)) {
                base_r = d.subject->left;
                factor_r = d.subject->right;
            } else if (recipe_equal(*d.premises[0].subject, *d.subject->right)) {
                base_r = d.subject->right;
                factor_r = d.subject->left;
            } else {
                return fail(failures, "R4 premise does not cover either factor");
            }
            ManifoldModel base = build(base_r, coeff);
            ManifoldModel factor = build(factor_r, coeff);
            if (base.dimension != side->base_dim || factor.dimension != side->factor_dim)
                return fail(failures, "R4 dimensions differ on re-check");
            if (side->base_dim <= 2) return fail(failures, "R4 base dimension must exceed 2");
            if (side->base_level <= 1 || side->base_level >= side->base_dim)
                return fail(failures, "R4 premise level outside (1, base dim)");
            if (side->base_level < d.premises[0].n0)
                return fail(failures, "R4 premise level below the premise's threshold");
            if (d.n0 != side->base_level + side->factor_dim)
                return fail(failures, "R4 level does not match premise level + factor dimension");
            if (!base.free_homology || !factor.free_homology)
                return fail(failures, "R4 freeness hypotheses fail on re-check");
            if (side->factor_degree_bound != side->base_dim - side->base_level + 1)
                return fail(failures, "R4 degree bound differs on re-check");
            if (!immerses_with_trivial_normal(factor, d.n0))
                return fail(failures, "R4 hypothesis (c) fails on re-check");
            if (!replay_cohp_witness(base, side->base_cohp, side->base_level - 1, failures,
                                     "R4 base CohP"))
                return false;
            // hypothesis (a): degrees <= bound, sum exactly the factor dimension
            if (side->factor_exact.target_n0 != side->factor_dim ||
                side->factor_exact.total_degree != side->factor_dim)
                return fail(failures, "R4 factor witness sum differs from the factor dimension");
            for (ClassRef c : side->factor_exact.classes)
                if (c.degree < 1 || c.degree > side->factor_degree_bound)
                    return fail(failures, "R4 factor witness degree outside [1, bound]");
            if (!witness_replays(factor, side->factor_exact))
                return fail(failures, "R4 factor witness does not re-evaluate");
            ManifoldModel product = kunneth_product(base, factor);
            return replay_cohp_witness(product, side->product_cohp, d.n0 - 1, failures,
                                       "R4 product CohP");
        }
    }
    return fail(failures, "unknown rule");
}

bool derivation_has_mixed_sphere_sum(const SpDerivation& d) {
    if (const auto* side = std::get_if<R2Side>(&d.side)) {
        auto [lo, hi] = std::minmax_element(side->canonical_ks.begin(), side->canonical_ks.end());
        if (lo != side->canonical_ks.end() && *lo != *hi) return true;
    }
    for (const auto& p : d.premises)
        if (derivation_has_mixed_sphere_sum(p)) return true;
    return false;
}

}  // namespace sgm
