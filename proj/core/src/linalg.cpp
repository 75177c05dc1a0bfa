#include "compactness/linalg.hpp"

#include <string>

namespace compactness {

namespace {

// Gauss-Jordan on `m` in place. When `transform` is non-null the same row
// operations are applied to it.
std::vector<std::size_t> eliminate(Matrix& m, Matrix* transform) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pick = row;
    while (pick < m.rows() && m(pick, col).is_zero()) ++pick;
    if (pick == m.rows()) continue;
    m.swap_rows(row, pick);
    if (transform) transform->swap_rows(row, pick);

    const Scalar inv = m(row, col).inverse();
    if (!inv.is_one()) {
      for (std::size_t c = col; c < m.cols(); ++c)
        if (!m(row, c).is_zero()) m(row, c) *= inv;
      if (transform)
        for (auto& t : transform->row(row))
          if (!t.is_zero()) t *= inv;
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const Scalar factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (!m(row, c).is_zero()) m(r, c) -= factor * m(row, c);
      if (transform)
        for (std::size_t c = 0; c < transform->cols(); ++c)
          if (!(*transform)(row, c).is_zero()) (*transform)(r, c) -= factor * (*transform)(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

RowReduction rref(const Matrix& m) {
  RowReduction out{m, {}, 0, Matrix::identity(m.field(), m.rows())};
  out.pivots = eliminate(out.reduced, &out.transform);
  out.rank = out.pivots.size();
  return out;
}

std::vector<std::size_t> pivot_columns(const Matrix& m) {
  Matrix work = m;
  return eliminate(work, nullptr);
}

std::size_t rank(const Matrix& m) { return pivot_columns(m).size(); }

std::optional<LinearSolution> solve_linear(const Matrix& a, std::span<const Scalar> b) {
  if (b.size() != a.rows())
    throw DimensionMismatch("right-hand side of length " + std::to_string(b.size()) + " for " +
                            std::to_string(a.rows()) + " rows");
  const Field f = a.field();
  const std::size_t n = a.cols();
  Matrix aug(f, a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (b[r].field() != f) throw FieldMismatch("right-hand side outside " + f.name());
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  const auto pivots = eliminate(aug, nullptr);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;

  LinearSolution sol{Vector(n, Scalar::zero(f)), {}};
  std::vector<bool> is_pivot(n, false);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    is_pivot[pivots[i]] = true;
    sol.particular[pivots[i]] = aug(i, n);
  }
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v(n, Scalar::zero(f));
    v[free] = Scalar::one(f);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -aug(i, free);
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

std::vector<Vector> nullspace(const Matrix& a) {
  Vector zero(a.rows(), Scalar::zero(a.field()));
  return solve_linear(a, zero)->nullspace;
}

std::optional<SpanWitness> in_row_span(const Matrix& m, std::span<const Scalar> v) {
  if (v.size() != m.cols())
    throw DimensionMismatch("vector of length " + std::to_string(v.size()) + " against " +
                            std::to_string(m.cols()) + " columns");
  const Field f = m.field();
  const RowReduction red = rref(m);

  // Each reduced row is a combination of input rows (a row of the transform).
  // Express v over the reduced rows via its pivot entries, then check the
  // remainder vanishes.
  Vector residual(v.begin(), v.end());
  Vector over_input(m.rows(), Scalar::zero(f));
  for (std::size_t i = 0; i < red.rank; ++i) {
    const Scalar c = residual[red.pivots[i]];
    if (c.is_zero()) continue;
    for (std::size_t col = 0; col < m.cols(); ++col)
      if (!red.reduced(i, col).is_zero()) residual[col] -= c * red.reduced(i, col);
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (!red.transform(i, r).is_zero()) over_input[r] += c * red.transform(i, r);
  }
  if (!is_zero_vector(residual)) return std::nullopt;

  SpanWitness w;
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!over_input[r].is_zero()) w.coefficients.emplace_back(r, over_input[r]);
  return w;
}

Vector combine_rows(const Matrix& m, const SpanWitness& w) {
  Vector out(m.cols(), Scalar::zero(m.field()));
  for (const auto& [r, c] : w.coefficients) {
    if (r >= m.rows()) throw DimensionMismatch("witness references row " + std::to_string(r));
    for (std::size_t col = 0; col < m.cols(); ++col) out[col] += c * m(r, col);
  }
  return out;
}

bool verify_span_witness(const Matrix& m, std::span<const Scalar> v, const SpanWitness& w) {
  if (v.size() != m.cols()) return false;
  for (const auto& [r, c] : w.coefficients)
    if (r >= m.rows() || c.is_zero() || c.field() != m.field()) return false;
  const Vector sum = combine_rows(m, w);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!(sum[i] == v[i])) return false;
  return true;
}

}  // namespace compactness
