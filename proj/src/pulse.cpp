#include "fetip/pulse.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fetip/physcore.hpp"

namespace fetip {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::domain_error(msg);
}

struct PulseTerm {
  double envelope;
  double phase;
};

PulseTerm pulse_term(const LaserPulseSpec& p, double t) {
  return {p.peak_field() * std::exp(-p.envelope_param() * t * t),
          p.chirp() * t * t + p.angular_frequency() * t};
}

}  // namespace

double envelope_param_from_fwhm(double fwhm_duration_s) {
  require(fwhm_duration_s > 0.0, "fwhm_duration must be > 0");
  return 2.0 * std::numbers::ln2 / (fwhm_duration_s * fwhm_duration_s);
}

double chirp_from_tbp(double fwhm_duration_s, double time_bandwidth_product) {
  require(time_bandwidth_product >= kGaussianTransformLimit,
          "time-bandwidth product below the Gaussian transform limit 0.441");
  const double a = envelope_param_from_fwhm(fwhm_duration_s);
  const double ratio = time_bandwidth_product / kGaussianTransformLimit;
  return a * std::sqrt(ratio * ratio - 1.0);
}

LaserPulseSpec::LaserPulseSpec(double peak_field_v_per_m, double wavelength_m,
                               double fwhm_duration_s, double chirp_per_s2)
    : peak_field_(peak_field_v_per_m),
      wavelength_(wavelength_m),
      fwhm_duration_(fwhm_duration_s),
      chirp_(chirp_per_s2) {
  require(peak_field_ >= 0.0 && std::isfinite(peak_field_), "peak_field must be >= 0");
  require(wavelength_ > 0.0, "wavelength must be > 0");
  require(std::isfinite(chirp_), "chirp must be finite");
  envelope_param_ = envelope_param_from_fwhm(fwhm_duration_);
  omega_ = fetip::angular_frequency(wavelength_);
}

LaserPulseSpec LaserPulseSpec::with_peak_field(double peak_field_v_per_m) const {
  return LaserPulseSpec(peak_field_v_per_m, wavelength_, fwhm_duration_, chirp_);
}

double LaserPulseSpec::field(double t) const {
  const auto term = pulse_term(*this, t);
  return term.envelope * std::cos(term.phase);
}

PulsePair::PulsePair(LaserPulseSpec pump, LaserPulseSpec probe, double delay_s)
    : pump_(pump), probe_(probe), delay_(delay_s) {
  require(pump_.wavelength() == probe_.wavelength(),
          "pump and probe must share one wavelength");
  require(std::isfinite(delay_), "delay must be finite");
}

PulsePair PulsePair::single(const LaserPulseSpec& pulse) {
  return PulsePair(pulse, pulse.with_peak_field(0.0), 0.0);
}

PulsePair PulsePair::with_delay(double delay_s) const {
  return PulsePair(pump_, probe_, delay_s);
}

PulsePair PulsePair::with_peak_fields(double pump_field, double probe_field) const {
  return PulsePair(pump_.with_peak_field(pump_field), probe_.with_peak_field(probe_field),
                   delay_);
}

void BeamCalibration::validate() const {
  require(average_power > 0.0, "average_power must be > 0");
  require(repetition_rate > 0.0, "repetition_rate must be > 0");
  require(focus_fwhm > 0.0, "focus_fwhm must be > 0");
}

double peak_field_from_power(const BeamCalibration& cal, double fwhm_duration_s) {
  cal.validate();
  require(fwhm_duration_s > 0.0, "fwhm_duration must be > 0");
  using namespace constants;
  const double shape = std::pow(pi / std::numbers::ln2, 1.5);
  const double denom = cal.repetition_rate * cal.focus_fwhm * cal.focus_fwhm *
                       fwhm_duration_s * vacuum_permittivity * speed_of_light * shape;
  return std::sqrt(16.0 * cal.average_power / denom);
}

double field_at(const PulsePair& pair, double t) {
  return pair.pump().field(t) + pair.probe().field(t - pair.delay());
}

FieldSample sample_field(const PulsePair& pair, double t) {
  const auto p1 = pulse_term(pair.pump(), t);
  const auto p2 = pulse_term(pair.probe(), t - pair.delay());
  const double c1 = std::cos(p1.phase), s1 = std::sin(p1.phase);
  const double c2 = std::cos(p2.phase), s2 = std::sin(p2.phase);
  const double re = p1.envelope * c1 + p2.envelope * c2;
  const double im = p1.envelope * s1 + p2.envelope * s2;
  return {re, re * re + im * im};
}

}  // namespace fetip
