#pragma once

#include "sgm/manifold.hpp"

namespace sgm {

/// Atomic builders. Every output passes validate_ring with an empty report.
ManifoldModel build_sphere(int k, const CoefficientSpec& coeff);
ManifoldModel build_torus(int k, const CoefficientSpec& coeff);
ManifoldModel build_real_projective(int m, const CoefficientSpec& coeff);  // PrimeField(2) only
ManifoldModel build_complex_projective(int k, const CoefficientSpec& coeff);

/// Cohomology of a product via the Kunneth formula with the Koszul sign
/// rule; requires free graded pieces on both factors.
ManifoldModel kunneth_product(const ManifoldModel& m1, const ManifoldModel& m2);

/// Cohomology of a connected sum: units and fundamental classes identified,
/// intermediate degrees direct-summed, cross-summand products of
/// positive-degree classes zero.
ManifoldModel connected_sum(const ManifoldModel& m1, const ManifoldModel& m2);

/// Builds the model for a whole recipe tree.
ManifoldModel build(const RecipePtr& recipe, const CoefficientSpec& coeff);

}  // namespace sgm
