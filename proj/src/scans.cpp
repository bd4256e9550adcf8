#include "fetip/scans.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "fetip/physcore.hpp"

namespace fetip {

namespace {

struct TimeGrid {
  double start;
  double step;
  std::size_t intervals;
};

TimeGrid make_grid(const PulsePair& pair, const IntegrationParams& params) {
  params.validate();
  const bool pump_on = pair.pump().peak_field() > 0.0;
  const bool probe_on = pair.probe().peak_field() > 0.0;
  double fwhm = 0.0;
  if (pump_on) fwhm = pair.pump().fwhm_duration();
  if (probe_on) fwhm = std::max(fwhm, pair.probe().fwhm_duration());
  if (fwhm == 0.0) fwhm = pair.pump().fwhm_duration();
  const double halfwidth = params.window_halfwidth * fwhm;

  double lo = 0.0, hi = 0.0;
  if (probe_on && !pump_on) {
    lo = hi = pair.delay();
  } else if (probe_on) {
    lo = std::min(0.0, pair.delay());
    hi = std::max(0.0, pair.delay());
  }
  lo -= halfwidth;
  hi += halfwidth;

  const double step = optical_period(pair.wavelength()) / params.samples_per_optical_cycle;
  const auto intervals = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  return {lo, step, std::max<std::size_t>(intervals, 1)};
}

template <typename F>
double trapezoid(const TimeGrid& g, F&& integrand) {
  double sum = 0.5 * (integrand(g.start) + integrand(g.start + g.intervals * g.step));
  for (std::size_t i = 1; i < g.intervals; ++i) sum += integrand(g.start + i * g.step);
  return sum * g.step;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned threads = std::min<std::size_t>(scan_thread_count(), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

Trace evaluate(const ScanSpec& spec, const std::function<double(double)>& yield_at) {
  spec.validate();
  Trace out;
  out.axis = spec.axis;
  out.axis_values = spec.grid;
  out.yields.assign(spec.grid.size(), 0.0);
  parallel_for(spec.grid.size(), [&](std::size_t i) { out.yields[i] = yield_at(spec.grid[i]); });
  return out;
}

void require_axis(const ScanSpec& spec, ScanAxis axis) {
  if (spec.axis != axis) {
    throw std::invalid_argument("scan spec axis is " + std::string(to_string(spec.axis)) +
                                ", expected " + std::string(to_string(axis)));
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform on the open interval (0, 1) from the top 53 bits.
double uniform_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& rng) {
  const double u1 = uniform_open(rng);
  const double u2 = uniform_open(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

std::string_view to_string(ScanAxis axis) {
  switch (axis) {
    case ScanAxis::delay: return "delay";
    case ScanAxis::power: return "power";
    case ScanAxis::polarization: return "polarization";
    case ScanAxis::voltage: return "voltage";
  }
  return "unknown";
}

std::optional<ScanAxis> parse_scan_axis(std::string_view name) {
  for (auto axis : {ScanAxis::delay, ScanAxis::power, ScanAxis::polarization, ScanAxis::voltage}) {
    if (to_string(axis) == name) return axis;
  }
  return std::nullopt;
}

void IntegrationParams::validate() const {
  if (samples_per_optical_cycle < 16) {
    throw std::invalid_argument("samples_per_optical_cycle must be >= 16");
  }
  if (!(window_halfwidth >= 4.0)) throw std::invalid_argument("window_halfwidth must be >= 4");
}

void Trace::validate() const {
  const auto n = axis_values.size();
  if (yields.size() != n || (counts && counts->size() != n) || (laser_ac && laser_ac->size() != n)) {
    throw std::invalid_argument("trace columns differ in length");
  }
  for (double y : yields) {
    if (!(y >= 0.0)) throw std::invalid_argument("trace yields must be >= 0");
  }
  if (counts) {
    for (auto c : *counts) {
      if (c < 0) throw std::invalid_argument("trace counts must be >= 0");
    }
  }
}

void ScanSpec::validate() const {
  if (grid.empty()) throw std::invalid_argument("scan grid is empty");
  for (double v : grid) {
    if (!std::isfinite(v)) throw std::invalid_argument("scan grid values must be finite");
  }
  if (grid.size() > 1) {
    const bool up = grid[1] > grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (up ? !(grid[i] > grid[i - 1]) : !(grid[i] < grid[i - 1])) {
        throw std::invalid_argument("scan grid must be strictly monotone");
      }
    }
  }
  integration.validate();
  if (axis == ScanAxis::power) calibration.validate();
  if (noise_seed && !(noise_scale > 0.0)) throw std::invalid_argument("noise_scale must be > 0");
}

double integrate_yield(const PulsePair& pair, const EmissionModel& model,
                       const IntegrationParams& params) {
  const auto grid = make_grid(pair, params);
  constexpr double inv_scale2 = 1.0 / (kRateFieldScale * kRateFieldScale);
  return trapezoid(grid, [&](double t) {
    const auto s = sample_field(pair, t);
    return total_rate(model, s.field, s.envelope_squared * inv_scale2);
  });
}

double laser_autocorrelation(const PulsePair& pair, const IntegrationParams& params) {
  const auto grid = make_grid(pair, params);
  return trapezoid(grid, [&](double t) {
    const double e = field_at(pair, t) / kRateFieldScale;
    const double e2 = e * e;
    return e2 * e2;
  });
}

Trace delay_scan(const ScanSpec& spec) {
  require_axis(spec, ScanAxis::delay);
  Trace out = evaluate(spec, [&](double delay) {
    return integrate_yield(spec.pair.with_delay(delay), spec.model, spec.integration);
  });
  std::vector<double> ac(spec.grid.size());
  parallel_for(spec.grid.size(), [&](std::size_t i) {
    ac[i] = laser_autocorrelation(spec.pair.with_delay(spec.grid[i]), spec.integration);
  });
  out.laser_ac = std::move(ac);
  return out;
}

Trace power_scan(const ScanSpec& spec) {
  require_axis(spec, ScanAxis::power);
  const bool pump_on = spec.pair.pump().peak_field() > 0.0;
  const bool probe_on = spec.pair.probe().peak_field() > 0.0;
  return evaluate(spec, [&](double power) {
    if (!(power > 0.0)) throw std::domain_error("power grid values must be > 0");
    BeamCalibration cal = spec.calibration;
    cal.average_power = power;
    const double pump = pump_on ? peak_field_from_power(cal, spec.pair.pump().fwhm_duration()) : 0.0;
    const double probe =
        probe_on ? peak_field_from_power(cal, spec.pair.probe().fwhm_duration()) : 0.0;
    return integrate_yield(spec.pair.with_peak_fields(pump, probe), spec.model, spec.integration);
  });
}

Trace polarization_scan(const ScanSpec& spec) {
  require_axis(spec, ScanAxis::polarization);
  return evaluate(spec, [&](double theta) {
    // A linear polarization at theta and theta + pi is the same axis.
    const double reduced = theta - std::numbers::pi * std::floor(theta / std::numbers::pi);
    return integrate_yield(spec.pair, spec.model.with_polarization(reduced), spec.integration);
  });
}

std::vector<MultiphotonChannel> admitted_channels(const EmissionModel& model) {
  const double phi_eff = effective_workfunction(model.tip().workfunction, model.dc_field());
  const int n_min = min_photon_number(phi_eff, model.photon_energy());
  std::vector<MultiphotonChannel> out;
  std::copy_if(model.multiphoton().begin(), model.multiphoton().end(), std::back_inserter(out),
               [n_min](const MultiphotonChannel& ch) { return ch.order >= n_min; });
  return out;
}

Trace voltage_scan(const ScanSpec& spec) {
  require_axis(spec, ScanAxis::voltage);
  return evaluate(spec, [&](double voltage) {
    const auto biased = spec.model.with_tip(spec.model.tip().with_voltage(voltage));
    auto channels = admitted_channels(biased);
    if (channels.empty() && biased.tunneling().empty()) return 0.0;
    return integrate_yield(spec.pair, biased.with_multiphoton(std::move(channels)),
                           spec.integration);
  });
}

Trace run_scan(const ScanSpec& spec) {
  Trace out;
  switch (spec.axis) {
    case ScanAxis::delay: out = delay_scan(spec); break;
    case ScanAxis::power: out = power_scan(spec); break;
    case ScanAxis::polarization: out = polarization_scan(spec); break;
    case ScanAxis::voltage: out = voltage_scan(spec); break;
  }
  if (spec.noise_seed) out = poissonize(out, spec.noise_scale, *spec.noise_seed);
  return out;
}

std::uint64_t point_seed(std::uint64_t seed, std::size_t index) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index)));
}

std::int64_t poisson_draw(double mean, std::mt19937_64& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw std::domain_error("poisson mean must be >= 0");
  if (mean == 0.0) return 0;
  if (mean < 30.0) {
    const double u = uniform_open(rng);
    double p = std::exp(-mean);
    double cdf = p;
    std::int64_t k = 0;
    while (u > cdf && k < 1000) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }
  const double draw = std::round(mean + std::sqrt(mean) * standard_normal(rng));
  return draw > 0.0 ? static_cast<std::int64_t>(draw) : 0;
}

Trace poissonize(const Trace& trace, double scale, std::uint64_t seed) {
  if (!(scale > 0.0)) throw std::domain_error("poisson scale must be > 0");
  trace.validate();
  Trace out = trace;
  std::vector<std::int64_t> counts(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    std::mt19937_64 rng(point_seed(seed, i));
    counts[i] = poisson_draw(scale * trace.yields[i], rng);
  }
  out.counts = std::move(counts);
  return out;
}

unsigned scan_thread_count() {
  if (const char* env = std::getenv("FETIP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace fetip
