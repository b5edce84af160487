#pragma once

#include <cstddef>
#include <vector>

#include "nilgrade/scalar.hpp"

namespace nilgrade {

using Vector = std::vector<Scalar>;

Vector zero_vector(const FieldPtr& field, std::size_t n);
Vector unit_vector(const FieldPtr& field, std::size_t n, std::size_t k);
bool is_zero(const Vector& v);
Vector add(const Vector& a, const Vector& b);
Vector scale(const Scalar& s, const Vector& v);

/// Dense row-major matrix over one field.
class Matrix {
 public:
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
  static Matrix identity(const FieldPtr& field, std::size_t n);
  static Matrix from_rows(const FieldPtr& field, const std::vector<Vector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldPtr& field() const { return field_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector col(std::size_t c) const;
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);
  Vector apply(const Vector& v) const;  // M v
  Matrix transpose() const;

 private:
  FieldPtr field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

/// Reduced row echelon form. Pivot = first nonzero entry scanning rows in
/// order (exact fields) or the largest-magnitude entry (approximate field).
struct Echelon {
  Matrix reduced;                   // only the nonzero rows are kept
  std::vector<std::size_t> pivots;  // pivot column of each kept row
};

Echelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Basis of { x : M x = 0 }, one vector per free column.
std::vector<Vector> kernel(const Matrix& m);
/// Some x with M x = rhs; throws Inconsistent.
Vector solve(const Matrix& m, const Vector& rhs);
/// Throws SingularMatrix.
Matrix inverse(const Matrix& m);

/// Coordinates of v against an echelon basis, or nullopt when v is outside the span.
std::optional<Vector> coordinates_in(const Echelon& basis, const Vector& v);
bool in_span(const Echelon& basis, const Vector& v);

}  // namespace nilgrade
