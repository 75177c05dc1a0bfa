#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "compactness/matrix.hpp"

namespace compactness {

enum class Relation { LessEqual, Equal, GreaterEqual };

/// coeffs . x (relation) rhs, over the rationals.
struct LinearConstraint {
  Vector coeffs;
  Relation relation = Relation::LessEqual;
  Scalar rhs;
};

LinearConstraint less_equal(Vector coeffs, Scalar rhs);
LinearConstraint greater_equal(Vector coeffs, Scalar rhs);
LinearConstraint equal_to(Vector coeffs, Scalar rhs);

bool satisfies(const LinearConstraint& c, std::span<const Scalar> x);

/// Exact feasibility of a system of rational linear constraints over free
/// variables in `dim` dimensions. Phase-one simplex with Bland's rule, so it
/// always terminates. Returns a point satisfying every constraint exactly, or
/// nullopt iff the system is infeasible.
///
/// Throws FieldMismatch for prime-field input and DimensionMismatch for rows
/// whose width differs from `dim`.
std::optional<Vector> lp_feasible(std::span<const LinearConstraint> constraints, std::size_t dim);

}  // namespace compactness
