#pragma once

#include <optional>
#include <string>

#include "sgm/recipe.hpp"
#include "sgm/ring.hpp"

namespace sgm {

enum class Orientability { Orientable, NonOrientable };

/// A closed connected manifold as the engine sees it: its dimension, the
/// algebraic model of its cohomology, and a few declared attributes the
/// ring cannot express.
struct ManifoldModel {
    int dimension = 0;
    RingPtr ring;
    Orientability orientable = Orientability::Orientable;
    bool free_homology = true;

    /// Declared immersion attribute: the model immerses in Euclidean
    /// n-space with trivial normal bundle for every n >= this threshold
    /// (the set is upward closed: compose with a standard inclusion).
    /// nullopt means no such n is declared.
    std::optional<int> immersion_trivial_normal_min;

    std::string source_expression;
    RecipePtr recipe;
};

inline bool immerses_with_trivial_normal(const ManifoldModel& m, int n) {
    return m.immersion_trivial_normal_min && n >= *m.immersion_trivial_normal_min;
}

}  // namespace sgm
