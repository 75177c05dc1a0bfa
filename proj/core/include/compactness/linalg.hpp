#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "compactness/matrix.hpp"

namespace compactness {

struct RowReduction {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  /// Invertible row operations applied so far: transform * input == reduced.
  Matrix transform;
};

/// Reduced row echelon form by exact Gauss-Jordan elimination.
RowReduction rref(const Matrix& m);

/// Pivot columns only; skips recording the transform.
std::vector<std::size_t> pivot_columns(const Matrix& m);
std::size_t rank(const Matrix& m);

struct LinearSolution {
  Vector particular;  ///< free variables set to zero
  std::vector<Vector> nullspace;
};

/// Solves a x = b. Returns nullopt when the system is inconsistent.
std::optional<LinearSolution> solve_linear(const Matrix& a, std::span<const Scalar> b);

/// Basis of { x : a x = 0 }, one vector per free column in ascending order.
std::vector<Vector> nullspace(const Matrix& a);

/// Nonzero coefficients of a combination of matrix rows.
struct SpanWitness {
  std::vector<std::pair<std::size_t, Scalar>> coefficients;

  friend bool operator==(const SpanWitness&, const SpanWitness&) = default;
};

/// Witness that v is a combination of the rows of m, or nullopt when it is not.
std::optional<SpanWitness> in_row_span(const Matrix& m, std::span<const Scalar> v);

/// Recomputes the combination and compares against v exactly.
bool verify_span_witness(const Matrix& m, std::span<const Scalar> v, const SpanWitness& w);

/// Sum of coefficient * row over the witness.
Vector combine_rows(const Matrix& m, const SpanWitness& w);

}  // namespace compactness
