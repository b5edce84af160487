#include "nilgrade/algebra.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nilgrade {

SparseVector to_sparse(const Vector& v) {
  SparseVector s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_zero()) s.push_back({k, v[k]});
  }
  return s;
}

Vector to_dense(const SparseVector& v, const FieldPtr& field, std::size_t n) {
  Vector d = zero_vector(field, n);
  for (const auto& t : v) d[t.index] = t.coeff;
  return d;
}

Algebra::Algebra(std::size_t n, FieldPtr field) : n_(n), field_(std::move(field)), table_(n * n) {}

void Algebra::set_product(std::size_t i, std::size_t j, SparseVector value) {
  std::sort(value.begin(), value.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
  SparseVector clean;
  for (auto& t : value) {
    if (t.index >= n_) throw Error(ErrorCode::ConstraintViolation, "basis index out of range");
    if (!same_field(t.coeff.field(), field_)) {
      throw Error(ErrorCode::FieldMismatch, "coefficient field differs from algebra field");
    }
    if (t.coeff.is_zero()) continue;
    if (!clean.empty() && clean.back().index == t.index) {
      clean.back().coeff += t.coeff;
    } else {
      clean.push_back(std::move(t));
    }
  }
  table_[i * n_ + j] = std::move(clean);
}

void Algebra::set_product(std::size_t i, std::size_t j, const Vector& value) {
  set_product(i, j, to_sparse(value));
}

Scalar Algebra::coefficient(std::size_t i, std::size_t j, std::size_t k) const {
  for (const auto& t : product(i, j)) {
    if (t.index == k) return t.coeff;
  }
  return Scalar(field_);
}

Vector Algebra::multiply(const Vector& x, const Vector& y) const {
  Vector out = zero_vector(field_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (y[j].is_zero()) continue;
      const auto& p = product(i, j);
      if (p.empty()) continue;
      Scalar w = x[i] * y[j];
      for (const auto& t : p) out[t.index] += w * t.coeff;
    }
  }
  return out;
}

Vector Algebra::multiply_right_basis(const Vector& v, std::size_t k) const {
  Vector out = zero_vector(field_, n_);
  for (std::size_t m = 0; m < n_; ++m) {
    if (v[m].is_zero()) continue;
    for (const auto& t : product(m, k)) out[t.index] += v[m] * t.coeff;
  }
  return out;
}

Vector Algebra::multiply_left_basis(std::size_t i, const Vector& v) const {
  Vector out = zero_vector(field_, n_);
  for (std::size_t m = 0; m < n_; ++m) {
    if (v[m].is_zero()) continue;
    for (const auto& t : product(i, m)) out[t.index] += v[m] * t.coeff;
  }
  return out;
}

std::size_t Algebra::nonzero_products() const {
  return static_cast<std::size_t>(
      std::count_if(table_.begin(), table_.end(), [](const SparseVector& s) { return !s.empty(); }));
}

bool operator==(const Algebra& a, const Algebra& b) {
  if (a.n_ != b.n_ || !same_field(a.field_, b.field_)) return false;
  for (std::size_t k = 0; k < a.table_.size(); ++k) {
    const auto& x = a.table_[k];
    const auto& y = b.table_[k];
    if (x.size() != y.size()) return false;
    for (std::size_t t = 0; t < x.size(); ++t) {
      if (x[t].index != y[t].index || x[t].coeff != y[t].coeff) return false;
    }
  }
  return true;
}

Algebra zero_algebra(std::size_t n, const FieldPtr& field) { return Algebra(n, field); }

Algebra change_field(const Algebra& a, const FieldPtr& field) {
  Algebra out(a.dim(), field);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      SparseVector s;
      for (const auto& t : a.product(i, j)) s.push_back({t.index, embed(t.coeff, field)});
      out.set_product(i, j, std::move(s));
    }
  }
  return out;
}

// ---------------------------------------------------------------- associativity

// (e_i e_j) e_k - e_i (e_j e_k) accumulated sparsely; empty when they agree.
static SparseVector associator(const Algebra& a, std::size_t i, std::size_t j, std::size_t k) {
  SparseVector acc;
  for (const auto& t : a.product(i, j)) {
    for (const auto& u : a.product(t.index, k)) acc.push_back({u.index, t.coeff * u.coeff});
  }
  for (const auto& t : a.product(j, k)) {
    for (const auto& u : a.product(i, t.index)) acc.push_back({u.index, -(t.coeff * u.coeff)});
  }
  if (acc.empty()) return acc;
  std::stable_sort(acc.begin(), acc.end(), [](const Term& x, const Term& y) { return x.index < y.index; });
  SparseVector out;
  for (auto& t : acc) {
    if (!out.empty() && out.back().index == t.index) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
  return out;
}

static void check_row(const Algebra& a, std::size_t i, std::vector<Violation>& out) {
  const std::size_t n = a.dim();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      SparseVector d = associator(a, i, j, k);
      if (!d.empty()) out.push_back({i, j, k, to_dense(d, a.field(), n)});
    }
  }
}

std::vector<Violation> verify_associativity_serial(const Algebra& a) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < a.dim(); ++i) check_row(a, i, out);
  return out;
}

std::vector<Violation> verify_associativity(const Algebra& a) {
  const auto n = static_cast<std::ptrdiff_t>(a.dim());
  std::vector<std::vector<Violation>> per_row(a.dim());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    check_row(a, static_cast<std::size_t>(i), per_row[static_cast<std::size_t>(i)]);
  }
  std::vector<Violation> out;
  for (auto& row : per_row) {
    for (auto& v : row) out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------- filtration

std::vector<std::size_t> Filtration::dims() const {
  std::vector<std::size_t> d;
  for (const auto& p : powers) d.push_back(p.pivots.size());
  return d;
}

std::size_t Filtration::degree_of(const Vector& v) const {
  std::size_t deg = 0;
  if (is_zero(v)) return 0;
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (in_span(powers[i], v)) {
      deg = i + 1;
    } else {
      break;
    }
  }
  return deg;
}

Filtration power_filtration(const Algebra& a) {
  const std::size_t n = a.dim();
  Filtration f;
  f.powers.push_back(rref(Matrix::identity(a.field(), n)));
  while (true) {
    const Echelon& last = f.powers.back();
    std::vector<Vector> gens;
    for (std::size_t r = 0; r < last.pivots.size(); ++r) {
      Vector x = last.reduced.row(r);
      for (std::size_t k = 0; k < n; ++k) {
        Vector p = a.multiply_right_basis(x, k);
        if (!is_zero(p)) gens.push_back(std::move(p));
      }
    }
    if (gens.empty()) break;
    if (f.powers.size() >= n) {
      throw Error(ErrorCode::NotNilpotent, "A^{n+1} != 0: algebra is not nilpotent");
    }
    f.powers.push_back(rref(Matrix::from_rows(a.field(), gens, n)));
  }
  f.nilindex = f.powers.size();
  return f;
}

Matrix left_mult_matrix(const Algebra& a, const Vector& x) {
  const std::size_t n = a.dim();
  Matrix m(a.field(), n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector col = zero_vector(a.field(), n);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (const auto& t : a.product(i, j)) col[t.index] += x[i] * t.coeff;
    }
    for (std::size_t r = 0; r < n; ++r) m(r, j) = col[r];
  }
  return m;
}

// ---------------------------------------------------------------- basis change

BasisChange BasisChange::from_rows(Matrix rows) {
  Matrix inv = inverse(rows);
  return {std::move(rows), std::move(inv)};
}

Algebra apply_basis_change(const Algebra& a, const BasisChange& p) {
  const std::size_t n = a.dim();
  if (p.forward.rows() != n || p.forward.cols() != n) {
    throw Error(ErrorCode::SingularMatrix, "basis change has the wrong size");
  }
  // products in old coordinates v satisfy v^T = w^T P, so w = P^{-T} v
  Matrix back_t = p.backward.transpose();
  Algebra out(n, a.field());
  std::vector<Matrix> left;
  left.reserve(n);
  for (std::size_t r = 0; r < n; ++r) left.push_back(left_mult_matrix(a, p.forward.row(r)));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      Vector old = left[r].apply(p.forward.row(s));
      out.set_product(r, s, back_t.apply(old));
    }
  }
#ifndef NDEBUG
  if (a.field()->exact() && verify_associativity_serial(a).empty()) {
    assert(verify_associativity_serial(out).empty());
  }
#endif
  return out;
}

double table_residual(const Algebra& a, const Algebra& b) {
  if (a.dim() != b.dim()) return INFINITY;
  double worst = 0.0;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vector x = to_dense(a.product(i, j), a.field(), n);
      Vector y = to_dense(b.product(i, j), b.field(), n);
      for (std::size_t k = 0; k < n; ++k) {
        if (a.field()->kind() == FieldKind::Approx || b.field()->kind() == FieldKind::Approx) {
          worst = std::max(worst, std::abs(x[k].to_complex() - y[k].to_complex()));
        } else if (x[k] != y[k]) {
          worst = std::max(worst, 1.0);
        }
      }
    }
  }
  return worst;
}

}  // namespace nilgrade
