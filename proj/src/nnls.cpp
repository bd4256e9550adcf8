#include "fetip/nnls.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace fetip {

namespace {

// Unconstrained least squares restricted to the passive columns; other entries are zero.
Eigen::VectorXd solve_passive(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                              const std::vector<bool>& passive) {
  const Eigen::Index n = a.cols();
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (passive[j]) cols.push_back(j);
  }
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  if (cols.empty()) return z;
  Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) sub.col(k) = a.col(cols[k]);
  const Eigen::VectorXd zs = sub.colPivHouseholderQr().solve(b);
  for (std::size_t k = 0; k < cols.size(); ++k) z(cols[k]) = zs(k);
  return z;
}

}  // namespace

NnlsResult solve_nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double dual_tolerance,
                      int max_iterations) {
  if (a.rows() != b.size()) throw std::invalid_argument("nnls: dimension mismatch");
  const Eigen::Index n = a.cols();
  if (max_iterations <= 0) max_iterations = 30 * static_cast<int>(n) + 30;

  NnlsResult out;
  out.x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(n, false);

  Eigen::VectorXd dual = a.transpose() * b;
  const double initial = dual.size() > 0 ? dual.maxCoeff() : 0.0;
  if (!(initial > 0.0)) {
    out.residual_norm = b.norm();
    out.converged = true;
    return out;
  }
  const double tolerance = dual_tolerance * initial;

  while (out.iterations < max_iterations) {
    // Most violated dual component among the zero set.
    Eigen::Index best = -1;
    double best_value = tolerance;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[j] && dual(j) > best_value) {
        best = j;
        best_value = dual(j);
      }
    }
    if (best < 0) {
      out.converged = true;
      break;
    }
    passive[best] = true;

    Eigen::VectorXd z = solve_passive(a, b, passive);
    if (!(z(best) > 0.0)) {
      // Round-off made the entering column useless; drop it and stop trying it.
      passive[best] = false;
      dual(best) = 0.0;
      ++out.iterations;
      continue;
    }

    for (;;) {
      ++out.iterations;
      bool feasible = true;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && z(j) <= 0.0) feasible = false;
      }
      if (feasible) break;
      double alpha = std::numeric_limits<double>::infinity();
      Eigen::Index blocking = -1;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && z(j) <= 0.0) {
          const double step = out.x(j) / (out.x(j) - z(j));
          if (step < alpha) {
            alpha = step;
            blocking = j;
          }
        }
      }
      out.x += alpha * (z - out.x);
      out.x(blocking) = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && out.x(j) <= 0.0) {
          passive[j] = false;
          out.x(j) = 0.0;
        }
      }
      z = solve_passive(a, b, passive);
      if (out.iterations >= max_iterations) break;
    }
    out.x = z;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[j]) out.x(j) = 0.0;
    }
    dual = a.transpose() * (b - a * out.x);
  }

  out.residual_norm = (a * out.x - b).norm();
  return out;
}

}  // namespace fetip
