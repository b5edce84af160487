#include "nilgrade/linalg.hpp"

#include <cmath>

namespace nilgrade {

Vector zero_vector(const FieldPtr& field, std::size_t n) { return Vector(n, Scalar(field)); }

Vector unit_vector(const FieldPtr& field, std::size_t n, std::size_t k) {
  Vector v = zero_vector(field, n);
  v[k] = Scalar::from_int(field, 1);
  return v;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Vector add(const Vector& a, const Vector& b) {
  Vector r = a;
  for (std::size_t k = 0; k < r.size(); ++k) r[k] += b[k];
  return r;
}

Vector scale(const Scalar& s, const Vector& v) {
  Vector r = v;
  for (auto& x : r) x = s * x;
  return r;
}

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, Scalar(field_)) {}

Matrix Matrix::identity(const FieldPtr& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = Scalar::from_int(field, 1);
  return m;
}

Matrix Matrix::from_rows(const FieldPtr& field, const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::col(std::size_t c) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  Matrix m(a.field_, a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) {
        if (!b(k, c).is_zero()) m(r, c) += x * b(k, c);
      }
    }
  }
  return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  Matrix m = a;
  for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] -= b.data_[k];
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Vector Matrix::apply(const Vector& v) const {
  Vector out = zero_vector(field_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!v[c].is_zero() && !(*this)(r, c).is_zero()) out[r] += (*this)(r, c) * v[c];
    }
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Echelon rref(const Matrix& input) {
  Matrix m = input;
  const bool approx = !m.field()->exact();
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t pivot = m.rows();
    if (approx) {
      double best = m.field()->tolerance();
      for (std::size_t r = lead_row; r < m.rows(); ++r) {
        double mag = std::abs(m(r, c).approx_value());
        if (mag > best) {
          best = mag;
          pivot = r;
        }
      }
    } else {
      for (std::size_t r = lead_row; r < m.rows(); ++r) {
        if (!m(r, c).is_zero()) {
          pivot = r;
          break;
        }
      }
    }
    if (pivot == m.rows()) continue;
    if (pivot != lead_row) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(pivot, k), m(lead_row, k));
    }
    Scalar inv = m(lead_row, c).inverse();
    for (std::size_t k = c; k < m.cols(); ++k) m(lead_row, k) = m(lead_row, k) * inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || m(r, c).is_zero()) continue;
      Scalar f = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) {
        if (!m(lead_row, k).is_zero()) m(r, k) -= f * m(lead_row, k);
      }
      if (approx) m(r, c) = Scalar(m.field());
    }
    pivots.push_back(c);
    ++lead_row;
  }
  Matrix reduced(m.field(), lead_row, m.cols());
  for (std::size_t r = 0; r < lead_row; ++r) {
    for (std::size_t k = 0; k < m.cols(); ++k) reduced(r, k) = m(r, k);
  }
  return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vector> kernel(const Matrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v = unit_vector(m.field(), m.cols(), free);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Vector solve(const Matrix& m, const Vector& rhs) {
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = rhs[r];
  }
  Echelon e = rref(aug);
  Vector x = zero_vector(m.field(), m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == m.cols()) throw Error(ErrorCode::Inconsistent, "linear system is inconsistent");
    x[e.pivots[r]] = e.reduced(r, m.cols());
  }
  return x;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::SingularMatrix, "non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = Scalar::from_int(m.field(), 1);
  }
  Echelon e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) {
    throw Error(ErrorCode::SingularMatrix, "matrix is singular");
  }
  Matrix inv(m.field(), n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
  }
  return inv;
}

std::optional<Vector> coordinates_in(const Echelon& basis, const Vector& v) {
  Vector rest = v;
  Vector coords = zero_vector(v.empty() ? basis.reduced.field() : v.front().field(), basis.pivots.size());
  for (std::size_t r = 0; r < basis.pivots.size(); ++r) {
    const Scalar c = rest[basis.pivots[r]];
    if (c.is_zero()) continue;
    coords[r] = c;
    for (std::size_t k = 0; k < rest.size(); ++k) {
      if (!basis.reduced(r, k).is_zero()) rest[k] -= c * basis.reduced(r, k);
    }
  }
  if (!is_zero(rest)) return std::nullopt;
  return coords;
}

bool in_span(const Echelon& basis, const Vector& v) { return coordinates_in(basis, v).has_value(); }

}  // namespace nilgrade
