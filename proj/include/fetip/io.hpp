#ifndef FETIP_IO_HPP
#define FETIP_IO_HPP

#include <iosfwd>
#include <optional>
#include <vector>

#include <json.hpp>

#include "fetip/analysis.hpp"
#include "fetip/scans.hpp"

namespace fetip {

/// CSV with header `axis,yield[,counts][,laser_ac]`, 12 significant digits, '.' decimal point.
void write_trace_csv(std::ostream& out, const Trace& trace);

struct TraceColumns {
  std::vector<double> axis;
  std::vector<double> yields;
  std::optional<std::vector<double>> counts;
  std::optional<std::vector<double>> laser_ac;

  /// counts when present, otherwise yields.
  const std::vector<double>& signal() const { return counts ? *counts : yields; }
};

/// Parses a trace CSV. Throws std::invalid_argument("line N: ...") on malformed input.
TraceColumns read_trace_csv(std::istream& in);

// Flat fit-report objects: model, coefficients, exponent, radius_m, residual, r_squared,
// warnings. Fields that do not apply to a model are null.
nlohmann::json fit_report(const PowerSeriesFit& fit);
nlohmann::json fit_report(const SinglePowerFit& fit);
nlohmann::json fit_report(const FnRadiusFit& fit);

}  // namespace fetip

#endif
