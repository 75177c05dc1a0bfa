#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "compactness/scalar.hpp"

namespace compactness {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix whose entries all live in one field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field field, std::size_t rows, std::size_t cols);
  /// Throws DimensionMismatch for ragged input and FieldMismatch for mixed fields.
  Matrix(Field field, std::size_t cols, const std::vector<Vector>& rows);

  static Matrix identity(Field field, std::size_t n);
  /// Convenience for tests and generators: integer entries, ragged input rejected.
  static Matrix from_ints(Field field, std::initializer_list<std::initializer_list<long long>> rows);

  Field field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void swap_rows(std::size_t a, std::size_t b);
  Matrix transposed() const;
  /// Rows selected in the given order.
  Matrix select_rows(std::span<const std::size_t> indices) const;

  Vector operator*(std::span<const Scalar> x) const;
  Matrix operator*(const Matrix& rhs) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Scalars from plain integers.
Vector make_vector(Field field, std::initializer_list<long long> values);

bool is_zero_vector(std::span<const Scalar> v);

}  // namespace compactness
