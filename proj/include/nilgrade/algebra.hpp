#pragma once

#include <cstddef>
#include <vector>

#include "nilgrade/linalg.hpp"

namespace nilgrade {

struct Term {
  std::size_t index;
  Scalar coeff;
};

/// Sorted by index, no zero coefficients.
using SparseVector = std::vector<Term>;

SparseVector to_sparse(const Vector& v);
Vector to_dense(const SparseVector& v, const FieldPtr& field, std::size_t n);

/// Finite-dimensional algebra given by structure constants:
/// e_i * e_j = sum_k c_ij^k e_k. Basis indices are 0-based here; the JSON
/// encoding and the family constructors speak the usual 1-based labels.
class Algebra {
 public:
  Algebra(std::size_t n, FieldPtr field);

  std::size_t dim() const { return n_; }
  const FieldPtr& field() const { return field_; }

  void set_product(std::size_t i, std::size_t j, SparseVector value);
  void set_product(std::size_t i, std::size_t j, const Vector& value);
  const SparseVector& product(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }
  /// Coefficient c_ij^k.
  Scalar coefficient(std::size_t i, std::size_t j, std::size_t k) const;

  /// Bilinear extension of the table.
  Vector multiply(const Vector& x, const Vector& y) const;
  /// (sum_m v_m e_m) * e_k
  Vector multiply_right_basis(const Vector& v, std::size_t k) const;
  /// e_i * (sum_m v_m e_m)
  Vector multiply_left_basis(std::size_t i, const Vector& v) const;

  std::size_t nonzero_products() const;

  friend bool operator==(const Algebra& a, const Algebra& b);
  friend bool operator!=(const Algebra& a, const Algebra& b) { return !(a == b); }

 private:
  std::size_t n_;
  FieldPtr field_;
  std::vector<SparseVector> table_;
};

/// Zero algebra of dimension n.
Algebra zero_algebra(std::size_t n, const FieldPtr& field);

/// Re-expresses every coefficient in another field (see `embed`).
Algebra change_field(const Algebra& a, const FieldPtr& field);

struct Violation {
  std::size_t i, j, k;  // 0-based
  Vector residual;      // (e_i e_j) e_k - e_i (e_j e_k)
};

/// All violating triples in (i, j, k) lexicographic order. Parallel over i.
std::vector<Violation> verify_associativity(const Algebra& a);
/// Single-threaded reference for the same check.
std::vector<Violation> verify_associativity_serial(const Algebra& a);

/// A^1 ⊇ A^2 ⊇ ... ⊇ A^k ≠ 0, A^{k+1} = 0.
struct Filtration {
  std::vector<Echelon> powers;  // powers[i] spans A^{i+1}
  std::size_t nilindex = 0;

  std::vector<std::size_t> dims() const;
  /// Largest i with v in A^i (1-based); 0 for v = 0.
  std::size_t degree_of(const Vector& v) const;
};

/// Throws NotNilpotent if A^{n+1} != 0.
Filtration power_filtration(const Algebra& a);

/// Column j is x * e_j.
Matrix left_mult_matrix(const Algebra& a, const Vector& x);

/// New basis e'_r = sum_c forward(r, c) e_c, i.e. rows of `forward` are the
/// new basis vectors in old coordinates.
struct BasisChange {
  Matrix forward;
  Matrix backward;

  /// Throws SingularMatrix.
  static BasisChange from_rows(Matrix rows);
};

Algebra apply_basis_change(const Algebra& a, const BasisChange& p);

/// Largest |difference| over all structure constants (approximate fields),
/// or 0/1 for exact fields (equal/unequal).
double table_residual(const Algebra& a, const Algebra& b);

}  // namespace nilgrade
