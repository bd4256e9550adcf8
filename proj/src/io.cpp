#include "fetip/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <fmt/core.h>

namespace fetip {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  for (auto& cell : out) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cell = b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1);
  }
  return out;
}

double parse_number(const std::string& cell, std::size_t line_no) {
  double v = 0.0;
  const auto* first = cell.data();
  const auto* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (cell.empty() || ec != std::errc{} || ptr != last) {
    throw std::invalid_argument(fmt::format("line {}: '{}' is not a number", line_no, cell));
  }
  return v;
}

nlohmann::json base_report(const char* model) {
  return nlohmann::json{{"model", model},
                        {"coefficients", nlohmann::json::array()},
                        {"exponent", nullptr},
                        {"radius_m", nullptr},
                        {"residual", nullptr},
                        {"r_squared", nullptr},
                        {"warnings", nlohmann::json::array()}};
}

}  // namespace

void write_trace_csv(std::ostream& out, const Trace& trace) {
  trace.validate();
  out << "axis,yield";
  if (trace.counts) out << ",counts";
  if (trace.laser_ac) out << ",laser_ac";
  out << '\n';
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << fmt::format("{:.12g},{:.12g}", trace.axis_values[i], trace.yields[i]);
    if (trace.counts) out << ',' << (*trace.counts)[i];
    if (trace.laser_ac) out << fmt::format(",{:.12g}", (*trace.laser_ac)[i]);
    out << '\n';
  }
}

TraceColumns read_trace_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    header = split(line);
    break;
  }
  if (header.empty()) throw std::invalid_argument("line 1: missing header row");

  int axis_col = -1, yield_col = -1, counts_col = -1, ac_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto& name = header[c];
    int* slot = name == "axis"       ? &axis_col
                : name == "yield"    ? &yield_col
                : name == "counts"   ? &counts_col
                : name == "laser_ac" ? &ac_col
                                     : nullptr;
    if (!slot) {
      throw std::invalid_argument(fmt::format("line {}: unknown column '{}'", line_no, name));
    }
    if (*slot >= 0) {
      throw std::invalid_argument(fmt::format("line {}: duplicate column '{}'", line_no, name));
    }
    *slot = static_cast<int>(c);
  }
  if (axis_col < 0) throw std::invalid_argument(fmt::format("line {}: missing 'axis' column", line_no));
  if (yield_col < 0 && counts_col < 0) {
    throw std::invalid_argument(
        fmt::format("line {}: need a 'yield' or 'counts' column", line_no));
  }

  TraceColumns cols;
  if (counts_col >= 0) cols.counts.emplace();
  if (ac_col >= 0) cols.laser_ac.emplace();
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw std::invalid_argument(fmt::format("line {}: expected {} fields, got {}", line_no,
                                              header.size(), cells.size()));
    }
    cols.axis.push_back(parse_number(cells[axis_col], line_no));
    if (yield_col >= 0) cols.yields.push_back(parse_number(cells[yield_col], line_no));
    if (counts_col >= 0) cols.counts->push_back(parse_number(cells[counts_col], line_no));
    if (ac_col >= 0) cols.laser_ac->push_back(parse_number(cells[ac_col], line_no));
  }
  if (yield_col < 0) cols.yields = *cols.counts;
  if (cols.axis.empty()) throw std::invalid_argument(fmt::format("line {}: no data rows", line_no));
  return cols;
}

nlohmann::json fit_report(const PowerSeriesFit& fit) {
  auto j = base_report("power-sum");
  j["coefficients"] = fit.coefficients;
  j["residual"] = fit.residual_norm;
  j["warnings"] = fit.warnings;
  return j;
}

nlohmann::json fit_report(const SinglePowerFit& fit) {
  auto j = base_report("single-power");
  j["coefficients"] = {fit.prefactor};
  j["exponent"] = fit.exponent;
  j["r_squared"] = fit.r_squared;
  return j;
}

nlohmann::json fit_report(const FnRadiusFit& fit) {
  auto j = base_report("fn-radius");
  j["coefficients"] = {fit.intercept, fit.slope};
  j["radius_m"] = fit.radius;
  j["r_squared"] = fit.r_squared;
  return j;
}

}  // namespace fetip
