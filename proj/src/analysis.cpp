#include "fetip/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <fmt/core.h>

#include "fetip/nnls.hpp"

namespace fetip {

namespace {

// Above this the design cannot separate neighbouring orders at double precision.
constexpr double kIllConditioned = 1e8;

void require_same_length(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw FitError("x and y columns differ in length");
}

void require_distinct(std::span<const double> x) {
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  if (!(*hi > *lo)) throw FitError("degenerate axis: all values are equal");
}

struct LineFit {
  double slope;
  double intercept;
  double r_squared;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw FitError("degenerate axis: all values are equal");
  const double slope = sxy / sxx;
  const double r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return {slope, my - slope * mx, r2};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double PowerSeriesFit::evaluate(double power) const {
  const double x = power / power_scale;
  double sum = 0.0, xn = 1.0;
  for (double c : normalized_coefficients) {
    sum += c * xn;
    xn *= x;
  }
  return sum;
}

PowerSeriesFit fit_power_sum(std::span<const double> powers, std::span<const double> counts,
                             int max_order) {
  require_same_length(powers, counts);
  if (max_order < 0 || max_order > kMaxPowerSeriesOrder) {
    throw FitError(fmt::format("max_order must be in [0, {}]", kMaxPowerSeriesOrder));
  }
  const auto m = powers.size();
  const auto cols = static_cast<std::size_t>(max_order) + 1;
  if (m < cols + 1) {
    throw FitError(fmt::format("power-sum fit to order {} needs at least {} points, got {}",
                               max_order, cols + 1, m));
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!(powers[i] > 0.0) || !std::isfinite(powers[i])) throw FitError("powers must be > 0");
    if (!(counts[i] >= 0.0) || !std::isfinite(counts[i])) throw FitError("counts must be >= 0");
  }
  require_distinct(powers);
  const bool up = powers[1] > powers[0];
  for (std::size_t i = 1; i < m; ++i) {
    if (up ? !(powers[i] > powers[i - 1]) : !(powers[i] < powers[i - 1])) {
      throw FitError("powers must be strictly monotone");
    }
  }

  PowerSeriesFit fit;
  fit.max_order = max_order;
  fit.power_scale = median({powers.begin(), powers.end()});

  const auto rows = static_cast<Eigen::Index>(m);
  const auto ncols = static_cast<Eigen::Index>(cols);
  Eigen::MatrixXd design(rows, ncols);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double sw = 1.0 / std::sqrt(std::max(counts[i], 1.0));
    const double x = powers[i] / fit.power_scale;
    double xn = 1.0;
    for (Eigen::Index n = 0; n < ncols; ++n) {
      design(i, n) = sw * xn;
      xn *= x;
    }
    rhs(i) = sw * counts[i];
  }

  const auto nnls = solve_nnls(design, rhs);
  if (!nnls.converged) fit.warnings.emplace_back("nnls did not converge within its iteration cap");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design);
  const auto& sv = svd.singularValues();
  fit.condition_number = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                                 : std::numeric_limits<double>::infinity();
  if (fit.condition_number > kIllConditioned) {
    fit.warnings.push_back(fmt::format(
        "ill-conditioned design (condition number {:.3g}): adjacent orders are nearly "
        "collinear on this grid, individual coefficients are not well determined",
        fit.condition_number));
  }

  // Covariance of the free (positive) coefficients; Poisson weights give unit variance rows.
  std::vector<Eigen::Index> active;
  for (Eigen::Index n = 0; n < ncols; ++n) {
    if (nnls.x(n) > 0.0) active.push_back(n);
  }
  Eigen::VectorXd se = Eigen::VectorXd::Zero(ncols);
  if (!active.empty()) {
    Eigen::MatrixXd sub(rows, static_cast<Eigen::Index>(active.size()));
    for (std::size_t k = 0; k < active.size(); ++k) sub.col(k) = design.col(active[k]);
    const Eigen::MatrixXd normal = sub.transpose() * sub;
    const Eigen::MatrixXd cov = normal.completeOrthogonalDecomposition().pseudoInverse();
    for (std::size_t k = 0; k < active.size(); ++k) {
      se(active[k]) = std::sqrt(std::max(cov(k, k), 0.0));
    }
  }

  fit.residual_norm = nnls.residual_norm;
  fit.normalized_coefficients.resize(cols);
  fit.coefficients.resize(cols);
  fit.normalized_standard_errors.resize(cols);
  fit.standard_errors.resize(cols);
  fit.per_order_contribution.assign(cols, std::vector<double>(m));
  for (std::size_t n = 0; n < cols; ++n) {
    const double unit = std::pow(fit.power_scale, static_cast<double>(n));
    fit.normalized_coefficients[n] = nnls.x(n);
    fit.coefficients[n] = nnls.x(n) / unit;
    fit.normalized_standard_errors[n] = se(n);
    fit.standard_errors[n] = se(n) / unit;
    for (std::size_t i = 0; i < m; ++i) {
      fit.per_order_contribution[n][i] =
          nnls.x(n) * std::pow(powers[i] / fit.power_scale, static_cast<double>(n));
    }
  }
  return fit;
}

SinglePowerFit fit_single_power(std::span<const double> powers, std::span<const double> counts) {
  require_same_length(powers, counts);
  if (powers.size() < 3) throw FitError("single power fit needs at least 3 points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (!(powers[i] > 0.0)) throw FitError("single power fit needs powers > 0");
    if (!(counts[i] > 0.0)) {
      throw FitError(fmt::format("single power fit needs counts > 0 (point {} is {})", i, counts[i]));
    }
    lx.push_back(std::log(powers[i]));
    ly.push_back(std::log(counts[i]));
  }
  const auto line = fit_line(lx, ly);
  return {line.slope, std::exp(line.intercept), line.r_squared};
}

FnRadiusFit fit_fn_radius(std::span<const double> voltages, std::span<const double> counts,
                          double phi_ev, double k, double c0) {
  require_same_length(voltages, counts);
  if (voltages.size() < 3) throw FitError("Fowler-Nordheim fit needs at least 3 points");
  if (!(phi_ev > 0.0) || !(k > 0.0) || !(c0 > 0.0)) {
    throw FitError("phi, k and c0 must all be > 0");
  }
  const double sign = voltages[0] < 0.0 ? -1.0 : 1.0;
  std::vector<double> x, y;
  for (std::size_t i = 0; i < voltages.size(); ++i) {
    const double v = voltages[i];
    if (v == 0.0 || !std::isfinite(v) || (v < 0.0 ? -1.0 : 1.0) != sign) {
      throw FitError("voltages must be nonzero and share one sign");
    }
    if (!(counts[i] > 0.0)) throw FitError(fmt::format("counts must be > 0 (point {})", i));
    x.push_back(1.0 / std::abs(v));
    y.push_back(std::log(counts[i] / (v * v)));
  }
  const auto line = fit_line(x, y);
  if (!(line.slope < 0.0)) throw FitError("data inconsistent with FN emission (slope >= 0)");
  FnRadiusFit fit;
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.r_squared = line.r_squared;
  fit.assumed_phi = phi_ev;
  fit.assumed_k = k;
  fit.radius = -line.slope / (c0 * std::pow(phi_ev, 1.5) * k);
  return fit;
}

}  // namespace fetip
