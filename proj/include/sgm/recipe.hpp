#pragma once

#include <memory>
#include <string>

namespace sgm {

/// Construction recipe for a closed manifold: spheres, tori and projective
/// spaces closed under products and connected sums. Shared immutable nodes;
/// the same subtree may appear in several recipes.
struct Recipe {
    enum class Kind { Sphere, Torus, RealProjective, ComplexProjective, Product, ConnectedSum };

    Kind kind;
    int param = 0;  // leaf parameter (k, or m for RP)
    std::shared_ptr<const Recipe> left, right;
};

using RecipePtr = std::shared_ptr<const Recipe>;

RecipePtr sphere_recipe(int k);
RecipePtr torus_recipe(int k);
RecipePtr real_projective_recipe(int m);
RecipePtr complex_projective_recipe(int k);
RecipePtr product_recipe(RecipePtr left, RecipePtr right);
RecipePtr connected_sum_recipe(RecipePtr left, RecipePtr right);

/// Manifold dimension determined by the recipe alone.
long long recipe_dimension(const Recipe& r);

/// Canonical DSL text: "x" binds tighter than " # ", parentheses only where
/// the tree shape requires them.
std::string recipe_text(const Recipe& r);

bool recipe_equal(const Recipe& a, const Recipe& b);

}  // namespace sgm
