#pragma once

#include <string>
#include <variant>
#include <vector>

#include "sgm/obstruction.hpp"

namespace sgm {

enum class Rule { R1_Sphere, R2_SphereProductSum, R3_ConnectedSumClosure, R4_ProductClosure };

const char* rule_name(Rule r);

struct R1Side {
    int sphere_dim = 0;
};

/// Connected sum of products of two spheres S^k x S^(m-k): the canonical
/// small factor k_j = min(k, m-k) per summand. The threshold is
/// max_j(k_j) + 1, since every summand's small factor must stay below the
/// target dimension.
struct R2Side {
    int dimension = 0;
    std::vector<int> canonical_ks;  // one per summand, in recipe order
};

/// Connected-sum closure: both summands certified at the common level n0
/// and both satisfying CohP at level n0 - 1.
struct R3Side {
    int dimension = 0;
    ObstructionWitness cohp_left, cohp_right;
};

/// Product closure: the base certified at level base_level with CohP at
/// base_level - 1, the factor carrying a nonvanishing product of degrees
/// <= factor_degree_bound summing exactly to its dimension, free homology
/// on both, the factor immersing with trivial normal bundle in target
/// n0-space, and the conclusion's own CohP check at n0 - 1.
struct R4Side {
    int base_dim = 0;
    int base_level = 0;  // premise level actually used; >= the premise derivation's n0
    int factor_dim = 0;
    int factor_degree_bound = 0;  // base_dim - base_level + 1
    ObstructionWitness base_cohp;
    ObstructionWitness factor_exact;
    ObstructionWitness product_cohp;
    int immersion_min = 0;  // factor's declared trivial-normal threshold
    bool base_free = false, factor_free = false;
};

/// A checked derivation that `subject` satisfies Sp_{>= n0}: it admits a
/// special generic map into Euclidean n-space for every n0 <= n < dim.
/// Premises and side conditions are re-checkable from scratch via
/// replay_derivation.
struct SpDerivation {
    Rule rule;
    int n0 = 0;
    RecipePtr subject;
    std::vector<SpDerivation> premises;
    std::variant<R1Side, R2Side, R3Side, R4Side> side;
};

int derivation_node_count(const SpDerivation& d);

/// Rule application outcome: a derivation, or the reason the rule does not
/// apply.
struct RuleResult {
    std::optional<SpDerivation> derivation;
    std::string reason;  // set when not applicable
};

/// R1: canonical projections of unit spheres are special generic.
RuleResult rule_r1_sphere(const ManifoldModel& m);

/// R2: connected sums (possibly a single term) of products of exactly two
/// spheres.
RuleResult rule_r2_sphere_product_sum(const RecipePtr& recipe);

/// R3: closure under connected sums at a common level (dimension > 2).
RuleResult rule_r3_connected_sum(const ManifoldModel& m1, const SpDerivation& d1,
                                 const ManifoldModel& m2, const SpDerivation& d2);

/// R4: closure under products with a factor of dimension n0 - base_level.
RuleResult rule_r4_product(const ManifoldModel& base, const SpDerivation& base_derivation,
                           const ManifoldModel& factor, int n0);

/// Bottom-up proof search over the recipe tree. Returns the derivation with
/// the least n0 (ties: fewer nodes, then rule order). Absence of a
/// derivation means "unknown", never "does not admit".
std::optional<SpDerivation> derive_sp(const RecipePtr& recipe, const CoefficientSpec& coeff);

/// Re-verifies every rule application and side condition from scratch,
/// rebuilding models from the recorded recipes. On failure, appends
/// human-readable reasons to `failures` when given.
bool replay_derivation(const SpDerivation& d, const CoefficientSpec& coeff,
                       std::vector<std::string>* failures = nullptr);

/// True when some R2 node certifies a sum with mixed small-factor
/// dimensions (where the threshold convention matters).
bool derivation_has_mixed_sphere_sum(const SpDerivation& d);

}  // namespace sgm
