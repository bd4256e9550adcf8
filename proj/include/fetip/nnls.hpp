#ifndef FETIP_NNLS_HPP
#define FETIP_NNLS_HPP

#include <Eigen/Dense>

namespace fetip {

struct NnlsResult {
  Eigen::VectorXd x;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// min ||A x - b|| subject to x >= 0, Lawson-Hanson active set. Stops when the largest
/// dual component over the zero set falls below `dual_tolerance` times its initial value.
NnlsResult solve_nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                      double dual_tolerance = 1e-10, int max_iterations = 0);

}  // namespace fetip

#endif
