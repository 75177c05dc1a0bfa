#include "compactness/lp.hpp"

#include <limits>
#include <string>

namespace compactness {

LinearConstraint less_equal(Vector coeffs, Scalar rhs) {
  return {std::move(coeffs), Relation::LessEqual, std::move(rhs)};
}

LinearConstraint greater_equal(Vector coeffs, Scalar rhs) {
  return {std::move(coeffs), Relation::GreaterEqual, std::move(rhs)};
}

LinearConstraint equal_to(Vector coeffs, Scalar rhs) { return {std::move(coeffs), Relation::Equal, std::move(rhs)}; }

bool satisfies(const LinearConstraint& c, std::span<const Scalar> x) {
  if (c.coeffs.size() != x.size()) throw DimensionMismatch("constraint width differs from point dimension");
  Scalar lhs = Scalar::zero(c.rhs.field());
  for (std::size_t j = 0; j < x.size(); ++j)
    if (!c.coeffs[j].is_zero()) lhs += c.coeffs[j] * x[j];
  switch (c.relation) {
    case Relation::LessEqual:
      return lhs <= c.rhs;
    case Relation::GreaterEqual:
      return lhs >= c.rhs;
    case Relation::Equal:
      return lhs == c.rhs;
  }
  return false;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Phase-one tableau. Columns: x+ (dim), x- (dim), slacks, artificials, rhs.
class Tableau {
 public:
  Tableau(std::span<const LinearConstraint> cons, std::size_t dim) : dim_(dim) {
    const Field q = Field::rationals();
    std::size_t slacks = 0;
    for (const auto& c : cons)
      if (c.relation != Relation::Equal) ++slacks;

    // A row needs an artificial unless its slack enters with +1 after making rhs >= 0.
    std::vector<int> slack_sign(cons.size(), 0);
    std::vector<bool> needs_art(cons.size(), true);
    for (std::size_t i = 0; i < cons.size(); ++i) {
      const bool flip = cons[i].rhs.sign() < 0;
      if (cons[i].relation == Relation::LessEqual) slack_sign[i] = 1;
      if (cons[i].relation == Relation::GreaterEqual) slack_sign[i] = -1;
      if (flip) slack_sign[i] = -slack_sign[i];
      needs_art[i] = slack_sign[i] != 1;
    }
    std::size_t arts = 0;
    for (bool b : needs_art) arts += b ? 1 : 0;

    first_art_ = 2 * dim + slacks;
    cols_ = first_art_ + arts;
    t_ = Matrix(q, cons.size(), cols_ + 1);
    basis_.assign(cons.size(), kNone);
    obj_.assign(cols_ + 1, Scalar::zero(q));

    std::size_t s = 0;
    std::size_t a = 0;
    for (std::size_t i = 0; i < cons.size(); ++i) {
      const bool flip = cons[i].rhs.sign() < 0;
      for (std::size_t j = 0; j < dim; ++j) {
        Scalar v = flip ? -cons[i].coeffs[j] : cons[i].coeffs[j];
        t_(i, j) = v;
        t_(i, dim + j) = -v;
      }
      if (cons[i].relation != Relation::Equal) {
        t_(i, 2 * dim + s) = Scalar(q, slack_sign[i]);
        if (!needs_art[i]) basis_[i] = 2 * dim + s;
        ++s;
      }
      if (needs_art[i]) {
        t_(i, first_art_ + a) = Scalar::one(q);
        basis_[i] = first_art_ + a;
        ++a;
      }
      t_(i, cols_) = flip ? -cons[i].rhs : cons[i].rhs;
    }

    // Reduced costs of "minimize sum of artificials" after pricing out the basis.
    for (std::size_t j = first_art_; j < cols_; ++j) obj_[j] = Scalar::one(q);
    for (std::size_t i = 0; i < t_.rows(); ++i) {
      if (basis_[i] < first_art_) continue;
      for (std::size_t j = 0; j <= cols_; ++j)
        if (!t_(i, j).is_zero()) obj_[j] -= t_(i, j);
    }
  }

  // Returns false iff the artificial objective stays positive.
  bool run() {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (obj_[j].sign() < 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) break;

      std::size_t leave = kNone;
      Scalar best;
      for (std::size_t i = 0; i < t_.rows(); ++i) {
        if (t_(i, enter).sign() <= 0) continue;
        Scalar ratio = t_(i, cols_) / t_(i, enter);
        if (leave == kNone || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      // Phase one is bounded below by zero, so an entering column always has a
      // positive entry.
      if (leave == kNone) throw std::logic_error("phase-one simplex reported unbounded");
      pivot(leave, enter);
    }
    // obj_[cols_] holds minus the objective value.
    return obj_[cols_].is_zero();
  }

  Vector point() const {
    const Field q = Field::rationals();
    Vector x(dim_, Scalar::zero(q));
    for (std::size_t i = 0; i < t_.rows(); ++i) {
      const std::size_t b = basis_[i];
      if (b < dim_) x[b] += t_(i, cols_);
      else if (b < 2 * dim_) x[b - dim_] -= t_(i, cols_);
    }
    return x;
  }

 private:
  void pivot(std::size_t row, std::size_t col) {
    const Scalar inv = t_(row, col).inverse();
    for (auto& v : t_.row(row))
      if (!v.is_zero()) v *= inv;
    for (std::size_t i = 0; i < t_.rows(); ++i) {
      if (i == row || t_(i, col).is_zero()) continue;
      const Scalar f = t_(i, col);
      for (std::size_t j = 0; j <= cols_; ++j)
        if (!t_(row, j).is_zero()) t_(i, j) -= f * t_(row, j);
    }
    if (!obj_[col].is_zero()) {
      const Scalar f = obj_[col];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (!t_(row, j).is_zero()) obj_[j] -= f * t_(row, j);
    }
    basis_[row] = col;
  }

  std::size_t dim_;
  std::size_t first_art_ = 0;
  std::size_t cols_ = 0;
  Matrix t_;
  std::vector<std::size_t> basis_;
  Vector obj_;
};

}  // namespace

std::optional<Vector> lp_feasible(std::span<const LinearConstraint> constraints, std::size_t dim) {
  for (const auto& c : constraints) {
    if (c.coeffs.size() != dim)
      throw DimensionMismatch("constraint of width " + std::to_string(c.coeffs.size()) + " in dimension " +
                              std::to_string(dim));
    if (!c.rhs.field().is_rational()) throw FieldMismatch("linear programs need an ordered field, got " + c.rhs.field().name());
    for (const auto& a : c.coeffs)
      if (!a.field().is_rational()) throw FieldMismatch("linear programs need an ordered field, got " + a.field().name());
  }
  Tableau tableau(constraints, dim);
  if (!tableau.run()) return std::nullopt;
  Vector x = tableau.point();
  for (const auto& c : constraints)
    if (!satisfies(c, x)) throw std::logic_error("simplex produced a point violating a constraint");
  return x;
}

}  // namespace compactness
