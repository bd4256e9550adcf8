#ifndef FETIP_ANALYSIS_HPP
#define FETIP_ANALYSIS_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fetip/emission.hpp"

namespace fetip {

/// Raised when data cannot be fitted (too few points, degenerate axis, wrong trend).
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxPowerSeriesOrder = 8;

/// Non-negative decomposition counts = sum_n c_n P^n.
struct PowerSeriesFit {
  int max_order = 0;
  double power_scale = 1.0;  // grid median; normalized intensity is P / power_scale
  std::vector<double> normalized_coefficients;  // c_n in units of counts per (P/scale)^n
  std::vector<double> coefficients;             // c_n in counts per W^n
  std::vector<double> normalized_standard_errors;
  std::vector<double> standard_errors;
  double residual_norm = 0.0;  // sqrt(sum w_i r_i^2), w_i = 1/max(count_i, 1)
  double condition_number = 0.0;
  /// per_order_contribution[n][i] = c_n P_i^n
  std::vector<std::vector<double>> per_order_contribution;
  std::vector<std::string> warnings;

  double evaluate(double power) const;
};

struct SinglePowerFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
};

struct FnRadiusFit {
  double radius = 0.0;     // m
  double slope = 0.0;      // V
  double intercept = 0.0;
  double assumed_phi = 0.0;
  double assumed_k = 0.0;
  double r_squared = 0.0;
};

/// Poisson-weighted NNLS of counts against (P/median)^n, n = 0..max_order.
PowerSeriesFit fit_power_sum(std::span<const double> powers, std::span<const double> counts,
                             int max_order = 5);

/// Ordinary least squares of log(counts) against log(powers).
SinglePowerFit fit_single_power(std::span<const double> powers, std::span<const double> counts);

/// Regression of ln(counts / V^2) on 1/|V|; slope = -C0 phi^{3/2} k r.
FnRadiusFit fit_fn_radius(std::span<const double> voltages, std::span<const double> counts,
                          double phi_ev, double k = kDefaultGeometryFactor,
                          double c0 = standard_fn_constant());

}  // namespace fetip

#endif
