#include "nilgrade/nlsq.hpp"

#include <cmath>
#include <limits>

namespace nilgrade {

double max_abs(const CVector& v) {
  double m = 0.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) m = std::max(m, std::abs(v[k]));
  return m;
}

static bool finite(const CVector& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k].real()) || !std::isfinite(v[k].imag())) return false;
  }
  return true;
}

static CMatrix jacobian(const ResidualFn& f, const CVector& x, const CVector& fx, double step) {
  CMatrix j(fx.size(), x.size());
  for (Eigen::Index c = 0; c < x.size(); ++c) {
    CVector xp = x;
    double h = step * std::max(1.0, std::abs(x[c]));
    xp[c] += h;
    j.col(c) = (f(xp) - fx) / h;
  }
  return j;
}

LmResult levenberg_marquardt(const ResidualFn& f, CVector x0, const LmOptions& options) {
  LmResult out;
  out.x = std::move(x0);
  CVector fx = f(out.x);
  if (!finite(fx)) {
    out.residual = std::numeric_limits<double>::infinity();
    return out;
  }
  double cost = fx.squaredNorm();
  double mu = -1.0;
  for (int it = 0; it < options.max_iterations; ++it) {
    out.iterations = it + 1;
    if (max_abs(fx) < options.target) break;
    CMatrix j = jacobian(f, out.x, fx, options.fd_step);
    CMatrix jhj = j.adjoint() * j;
    CVector g = j.adjoint() * fx;
    if (mu < 0) mu = 1e-3 * std::max(1e-12, jhj.diagonal().real().maxCoeff());
    bool improved = false;
    for (int attempt = 0; attempt < 30; ++attempt) {
      CMatrix lhs = jhj;
      for (Eigen::Index d = 0; d < lhs.rows(); ++d) lhs(d, d) += mu * std::max(1e-12, jhj(d, d).real());
      CVector dx = lhs.ldlt().solve(-g);
      CVector trial = out.x + dx;
      CVector ft = f(trial);
      double tc = finite(ft) ? ft.squaredNorm() : std::numeric_limits<double>::infinity();
      if (tc < cost) {
        out.x = std::move(trial);
        fx = std::move(ft);
        cost = tc;
        mu = std::max(mu / 3.0, 1e-15);
        improved = true;
        break;
      }
      mu *= 4.0;
    }
    if (!improved) break;
  }
  out.residual = max_abs(fx);
  return out;
}

}  // namespace nilgrade
