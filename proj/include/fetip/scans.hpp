#ifndef FETIP_SCANS_HPP
#define FETIP_SCANS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "fetip/emission.hpp"
#include "fetip/pulse.hpp"

namespace fetip {

enum class ScanAxis { delay, power, polarization, voltage };

std::string_view to_string(ScanAxis axis);
std::optional<ScanAxis> parse_scan_axis(std::string_view name);

/// Fixed-step composite trapezoid over the pulse window.
struct IntegrationParams {
  int samples_per_optical_cycle = 64;
  double window_halfwidth = 6.0;  // multiples of the envelope FWHM

  void validate() const;
};

/// One sweep. Columns all have the same length; yields are in arbitrary units, axis values
/// in SI (s, W, rad, V).
struct Trace {
  ScanAxis axis = ScanAxis::delay;
  std::vector<double> axis_values;
  std::vector<double> yields;
  std::optional<std::vector<std::int64_t>> counts;
  std::optional<std::vector<double>> laser_ac;

  std::size_t size() const { return axis_values.size(); }
  void validate() const;
};

struct ScanSpec {
  ScanAxis axis;
  std::vector<double> grid;
  PulsePair pair;
  EmissionModel model;
  BeamCalibration calibration;
  IntegrationParams integration{};
  std::optional<std::uint64_t> noise_seed{};
  double noise_scale = 1.0;  // counts per unit yield

  void validate() const;
};

/// Integral of total_rate(field_at(t)) over [min(0,delay) - W, max(0,delay) + W], with
/// W = window_halfwidth x FWHM. Pulses with zero amplitude do not widen the window.
double integrate_yield(const PulsePair& pair, const EmissionModel& model,
                       const IntegrationParams& params);

/// Second-order interferometric autocorrelation, integral of (E1 + E2)^4 dt with the field
/// in kRateFieldScale units.
double laser_autocorrelation(const PulsePair& pair, const IntegrationParams& params);

Trace delay_scan(const ScanSpec& spec);
Trace power_scan(const ScanSpec& spec);
Trace polarization_scan(const ScanSpec& spec);
Trace voltage_scan(const ScanSpec& spec);

/// Dispatches on spec.axis and applies Poisson noise when a seed is set.
Trace run_scan(const ScanSpec& spec);

/// Multiphoton channels at or above the minimum photon number for the tip's DC field.
std::vector<MultiphotonChannel> admitted_channels(const EmissionModel& model);

/// Poisson counts with mean scale * yield, one independent stream per point.
Trace poissonize(const Trace& trace, double scale, std::uint64_t seed);

/// Per-point stream seed derived from (scan seed, point index).
std::uint64_t point_seed(std::uint64_t seed, std::size_t index);

/// Inverse transform below a mean of 30, rounded Gaussian clamped at 0 above.
std::int64_t poisson_draw(double mean, std::mt19937_64& rng);

/// Worker threads for grid evaluation; FETIP_THREADS overrides hardware concurrency.
unsigned scan_thread_count();

}  // namespace fetip

#endif
