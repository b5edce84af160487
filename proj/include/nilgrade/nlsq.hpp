#pragma once

#include <Eigen/Dense>

#include <functional>

namespace nilgrade {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// F must be holomorphic in x; the Jacobian is taken by forward differences.
using ResidualFn = std::function<CVector(const CVector&)>;

struct LmOptions {
  int max_iterations = 300;
  double target = 1e-14;    // stop once max |F_k| drops below this
  double fd_step = 1e-7;
};

struct LmResult {
  CVector x;
  double residual = 0.0;  // max |F_k(x)|
  int iterations = 0;
};

/// Levenberg-Marquardt on complex unknowns: (J^H J + mu D) dx = -J^H F.
LmResult levenberg_marquardt(const ResidualFn& f, CVector x0, const LmOptions& options = {});

double max_abs(const CVector& v);

}  // namespace nilgrade
