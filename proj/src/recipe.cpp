#include "sgm/recipe.hpp"

#include <sstream>

namespace sgm {

namespace {

RecipePtr leaf(Recipe::Kind kind, int param) {
    auto r = std::make_shared<Recipe>();
    r->kind = kind;
    r->param = param;
    return r;
}

RecipePtr node(Recipe::Kind kind, RecipePtr left, RecipePtr right) {
    auto r = std::make_shared<Recipe>();
    r->kind = kind;
    r->left = std::move(left);
    r->right = std::move(right);
    return r;
}

}  // namespace

RecipePtr sphere_recipe(int k) { return leaf(Recipe::Kind::Sphere, k); }
RecipePtr torus_recipe(int k) { return leaf(Recipe::Kind::Torus, k); }
RecipePtr real_projective_recipe(int m) { return leaf(Recipe::Kind::RealProjective, m); }
RecipePtr complex_projective_recipe(int k) { return leaf(Recipe::Kind::ComplexProjective, k); }
RecipePtr product_recipe(RecipePtr left, RecipePtr right) {
    return node(Recipe::Kind::Product, std::move(left), std::move(right));
}
RecipePtr connected_sum_recipe(RecipePtr left, RecipePtr right) {
    return node(Recipe::Kind::ConnectedSum, std::move(left), std::move(right));
}

long long recipe_dimension(const Recipe& r) {
    switch (r.kind) {
        case Recipe::Kind::Sphere:
        case Recipe::Kind::Torus:
        case Recipe::Kind::RealProjective: return r.param;
        case Recipe::Kind::ComplexProjective: return 2LL * r.param;
        case Recipe::Kind::Product: return recipe_dimension(*r.left) + recipe_dimension(*r.right);
        case Recipe::Kind::ConnectedSum: return recipe_dimension(*r.left);
    }
    return 0;
}

namespace {

// Precedence: atoms > product > connected sum.
void print(const Recipe& r, std::ostream& out, int parent_level, bool right_child) {
    switch (r.kind) {
        case Recipe::Kind::Sphere: out << "S(" << r.param << ")"; return;
        case Recipe::Kind::Torus: out << "T(" << r.param << ")"; return;
        case Recipe::Kind::RealProjective: out << "RP(" << r.param << ")"; return;
        case Recipe::Kind::ComplexProjective: out << "CP(" << r.param << ")"; return;
        case Recipe::Kind::Product: {
            // needs parens under a product on the right (left association),
            // never under a connected sum
            bool parens = parent_level >= 2 && (parent_level > 2 || right_child);
            if (parens) out << "(";
            print(*r.left, out, 2, false);
            out << "x";
            print(*r.right, out, 2, true);
            if (parens) out << ")";
            return;
        }
        case Recipe::Kind::ConnectedSum: {
            bool parens = parent_level >= 2 || (parent_level == 1 && right_child);
            if (parens) out << "(";
            print(*r.left, out, 1, false);
            out << " # ";
            print(*r.right, out, 1, true);
            if (parens) out << ")";
            return;
        }
    }
}

}  // namespace

std::string recipe_text(const Recipe& r) {
    std::ostringstream out;
    print(r, out, 0, false);
    return out.str();
}

bool recipe_equal(const Recipe& a, const Recipe& b) {
    if (a.kind != b.kind || a.param != b.param) return false;
    if (static_cast<bool>(a.left) != static_cast<bool>(b.left)) return false;
    if (a.left && !recipe_equal(*a.left, *b.left)) return false;
    if (static_cast<bool>(a.right) != static_cast<bool>(b.right)) return false;
    if (a.right && !recipe_equal(*a.right, *b.right)) return false;
    return true;
}

}  // namespace sgm
