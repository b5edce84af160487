#include "nilgrade/grading.hpp"

#include <algorithm>
#include <complex>
#include <random>
#include <sstream>

#include "nilgrade/nlsq.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nilgrade {

std::size_t CharacteristicSequence::total() const {
  std::size_t t = 0;
  for (auto p : parts) t += p;
  return t;
}

std::string CharacteristicSequence::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < parts.size(); ++k) os << (k ? "," : "") << parts[k];
  os << ")";
  return os.str();
}

bool operator<(const CharacteristicSequence& a, const CharacteristicSequence& b) {
  return std::lexicographical_compare(a.parts.begin(), a.parts.end(), b.parts.begin(), b.parts.end());
}

CharacteristicSequence jordan_block_sizes(const Matrix& nilpotent) {
  const std::size_t n = nilpotent.rows();
  std::vector<std::size_t> ranks{n};
  Matrix power = Matrix::identity(nilpotent.field(), n);
  while (ranks.back() != 0) {
    if (ranks.size() > n) {
      throw Error(ErrorCode::NotNilpotentMatrix, "matrix power N^n is nonzero");
    }
    power = power * nilpotent;
    ranks.push_back(rank(power));
    if (ranks.back() == ranks[ranks.size() - 2]) {
      throw Error(ErrorCode::NotNilpotentMatrix, "rank of N^s stabilised above zero");
    }
  }
  // at_least[s] = number of blocks of size >= s
  CharacteristicSequence out;
  for (std::size_t s = ranks.size() - 1; s >= 1; --s) {
    std::size_t at_least = ranks[s - 1] - ranks[s];
    std::size_t longer = s + 1 < ranks.size() ? ranks[s] - ranks[s + 1] : 0;
    for (std::size_t b = 0; b < at_least - longer; ++b) out.parts.push_back(s);
  }
  return out;
}

static bool in_square(const Filtration& f, const Vector& x) {
  if (is_zero(x)) return true;
  return f.powers.size() >= 2 && in_span(f.powers[1], x);
}

CharacteristicSequence characteristic_sequence_at(const Algebra& a, const Vector& x) {
  Filtration f = power_filtration(a);
  if (in_square(f, x)) throw Error(ErrorCode::ElementInSquare, "x lies in A^2");
  return jordan_block_sizes(left_mult_matrix(a, x));
}

WitnessedSequence characteristic_sequence(const Algebra& a, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = a.dim();
  const FieldPtr& field = a.field();
  Filtration f = power_filtration(a);

  std::vector<Vector> candidates;
  std::vector<std::size_t> outside;
  for (std::size_t k = 0; k < n; ++k) {
    Vector e = unit_vector(field, n, k);
    if (!in_square(f, e)) {
      outside.push_back(k);
      candidates.push_back(std::move(e));
    }
  }
  for (std::size_t x = 0; x < outside.size(); ++x) {
    for (std::size_t y = x + 1; y < outside.size(); ++y) {
      Vector v = unit_vector(field, n, outside[x]);
      v[outside[y]] = Scalar::from_int(field, 1);
      candidates.push_back(std::move(v));
    }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    Vector v = zero_vector(field, n);
    for (auto& c : v) c = random_scalar(field, rng);
    candidates.push_back(std::move(v));
  }

  std::vector<std::optional<CharacteristicSequence>> seqs(candidates.size());
  const auto count = static_cast<std::ptrdiff_t>(candidates.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < count; ++c) {
    const Vector& x = candidates[static_cast<std::size_t>(c)];
    if (in_square(f, x)) continue;
    seqs[static_cast<std::size_t>(c)] = jordan_block_sizes(left_mult_matrix(a, x));
  }

  WitnessedSequence best{CharacteristicSequence{std::vector<std::size_t>(n, 1)}, {}};
  bool found = false;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (!seqs[c]) continue;
    if (!found || best.sequence < *seqs[c]) {
      best = {*seqs[c], candidates[c]};
      found = true;
    }
  }
  if (!found) best.witness = zero_vector(field, n);
  return best;
}

static Gradation make_gradation(std::vector<std::size_t> degree) {
  Gradation g;
  std::size_t top = 0;
  for (auto d : degree) top = std::max(top, d);
  g.components.resize(top);
  for (std::size_t k = 0; k < degree.size(); ++k) g.components[degree[k] - 1].push_back(k);
  g.degree = std::move(degree);
  return g;
}

bool respects_gradation(const Algebra& a, const std::vector<std::size_t>& degree) {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      for (const auto& t : a.product(i, j)) {
        if (degree[t.index] != degree[i] + degree[j]) return false;
      }
    }
  }
  return true;
}

std::optional<Gradation> basis_gradation(const Algebra& a) {
  const std::size_t n = a.dim();
  Filtration f = power_filtration(a);
  std::vector<std::size_t> degree(n);
  for (std::size_t k = 0; k < n; ++k) degree[k] = f.degree_of(unit_vector(a.field(), n, k));
  auto dims = f.dims();
  for (std::size_t i = 0; i < dims.size(); ++i) {
    auto at_least = static_cast<std::size_t>(
        std::count_if(degree.begin(), degree.end(), [&](std::size_t d) { return d >= i + 1; }));
    if (at_least != dims[i]) return std::nullopt;
  }
  if (!respects_gradation(a, degree)) return std::nullopt;
  return make_gradation(std::move(degree));
}

GradedResult associated_graded(const Algebra& a) {
  const std::size_t n = a.dim();
  const FieldPtr& field = a.field();
  Filtration f = power_filtration(a);

  struct Rep {
    std::size_t pivot;
    std::size_t degree;
    Vector row;
  };
  std::vector<Rep> reps;
  for (std::size_t i = 0; i < f.powers.size(); ++i) {
    const Echelon& here = f.powers[i];
    std::vector<std::size_t> deeper;
    if (i + 1 < f.powers.size()) deeper = f.powers[i + 1].pivots;
    for (std::size_t r = 0; r < here.pivots.size(); ++r) {
      if (std::find(deeper.begin(), deeper.end(), here.pivots[r]) != deeper.end()) continue;
      reps.push_back({here.pivots[r], i + 1, here.reduced.row(r)});
    }
  }
  std::sort(reps.begin(), reps.end(), [](const Rep& x, const Rep& y) { return x.pivot < y.pivot; });

  std::vector<Vector> rows;
  std::vector<std::size_t> degree;
  for (auto& r : reps) {
    rows.push_back(r.row);
    degree.push_back(r.degree);
  }
  BasisChange adapted = BasisChange::from_rows(Matrix::from_rows(field, rows, n));
  Matrix back_t = adapted.backward.transpose();

  Algebra graded(n, field);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      Vector w = back_t.apply(a.multiply(rows[r], rows[s]));
      for (std::size_t t = 0; t < n; ++t) {
        if (degree[t] != degree[r] + degree[s]) w[t] = Scalar(field);
      }
      graded.set_product(r, s, w);
    }
  }
  return {std::move(graded), make_gradation(std::move(degree)), std::move(adapted)};
}

// ---------------------------------------------------------------- natural gradation

namespace {

using cd = std::complex<double>;

std::vector<cd> dense_table(const Algebra& a) {
  const std::size_t n = a.dim();
  std::vector<cd> t(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& term : a.product(i, j)) t[(i * n + j) * n + term.index] = term.coeff.to_complex();
    }
  }
  return t;
}

}  // namespace

NaturalGradingReport is_naturally_graded(const Algebra& a, std::uint64_t seed, std::size_t restarts,
                                         double tolerance) {
  NaturalGradingReport report;
  GradedResult gr = associated_graded(a);
  report.gradation = gr.gradation;

  if (a.field()->exact()) {
    if (apply_basis_change(a, gr.adapted) == gr.graded) {
      report.naturally_graded = true;
      report.witness = gr.adapted;
      return report;
    }
    if (a.field()->kind() == FieldKind::Prime) return report;
  }

  // phi(b_r) = adapted_r + sum_{deg t > deg r} c_rt adapted_t, solved by least squares
  const std::size_t n = a.dim();
  const auto& deg = gr.gradation.degree;
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t t = 0; t < n; ++t) {
      if (deg[t] > deg[r]) slots.push_back({r, t});
    }
  }
  const std::vector<cd> at = dense_table(a);
  const std::vector<cd> gt = dense_table(gr.graded);
  CMatrix base(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) base(r, c) = gr.adapted.forward(r, c).to_complex();
  }
  auto images = [&](const CVector& x) {
    CMatrix p = base;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      p.row(slots[s].first) += x[static_cast<Eigen::Index>(s)] * base.row(slots[s].second);
    }
    return p;
  };
  auto residual = [&](const CVector& x) {
    CMatrix p = images(x);
    CVector out(static_cast<Eigen::Index>(n * n * n));
    out.setZero();
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t s = 0; s < n; ++s) {
        Eigen::Index off = static_cast<Eigen::Index>((r * n + s) * n);
        for (std::size_t i = 0; i < n; ++i) {
          if (p(r, i) == cd{}) continue;
          for (std::size_t j = 0; j < n; ++j) {
            cd w = p(r, i) * p(s, j);
            if (w == cd{}) continue;
            for (std::size_t k = 0; k < n; ++k) out[off + static_cast<Eigen::Index>(k)] += w * at[(i * n + j) * n + k];
          }
        }
        for (std::size_t u = 0; u < n; ++u) {
          cd g = gt[(r * n + s) * n + u];
          if (g == cd{}) continue;
          for (std::size_t k = 0; k < n; ++k) out[off + static_cast<Eigen::Index>(k)] -= g * p(u, k);
        }
      }
    }
    return out;
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  LmResult best;
  best.residual = std::numeric_limits<double>::infinity();
  for (std::size_t attempt = 0; attempt <= restarts; ++attempt) {
    CVector x0 = CVector::Zero(static_cast<Eigen::Index>(slots.size()));
    if (attempt > 0) {
      for (Eigen::Index k = 0; k < x0.size(); ++k) x0[k] = cd(normal(rng), normal(rng));
    }
    LmResult r = levenberg_marquardt(residual, x0);
    if (r.residual < best.residual) best = r;
    if (best.residual < tolerance) break;
  }
  report.exact = false;
  report.residual = best.residual;
  if (best.residual < tolerance) {
    FieldPtr approx = Field::approx(tolerance);
    CMatrix p = images(best.x);
    Matrix m(approx, n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) m(r, c) = Scalar::from_complex(approx, p(r, c));
    }
    report.naturally_graded = true;
    report.witness = BasisChange::from_rows(std::move(m));
  }
  return report;
}

}  // namespace nilgrade
