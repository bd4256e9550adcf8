#ifndef FETIP_PULSE_HPP
#define FETIP_PULSE_HPP

namespace fetip {

/// Smallest time-bandwidth product of a Gaussian pulse (intensity FWHM x spectral FWHM).
inline constexpr double kGaussianTransformLimit = 0.441;

/// Envelope parameter a = 2 ln2 / t^2, so the intensity envelope exp(-2 a t^2) has FWHM t.
double envelope_param_from_fwhm(double fwhm_duration_s);

/// Linear chirp b of a Gaussian pulse with the given duration and time-bandwidth product.
double chirp_from_tbp(double fwhm_duration_s, double time_bandwidth_product);

/// One linearly chirped Gaussian pulse centred on t = 0 with zero carrier-envelope phase:
///   F(t) = F0 exp(-a t^2) cos(b t^2 + w t)
class LaserPulseSpec {
 public:
  LaserPulseSpec(double peak_field_v_per_m, double wavelength_m, double fwhm_duration_s,
                 double chirp_per_s2 = 0.0);

  double peak_field() const { return peak_field_; }
  double wavelength() const { return wavelength_; }
  double fwhm_duration() const { return fwhm_duration_; }
  double chirp() const { return chirp_; }
  double envelope_param() const { return envelope_param_; }
  double angular_frequency() const { return omega_; }

  LaserPulseSpec with_peak_field(double peak_field_v_per_m) const;

  double field(double t) const;

 private:
  double peak_field_;
  double wavelength_;
  double fwhm_duration_;
  double chirp_;
  double envelope_param_;
  double omega_;
};

/// Pump at t = 0, probe shifted by `delay`; positive delay means the probe arrives later.
class PulsePair {
 public:
  PulsePair(LaserPulseSpec pump, LaserPulseSpec probe, double delay_s = 0.0);

  /// Pump only; the probe is a copy with zero amplitude.
  static PulsePair single(const LaserPulseSpec& pulse);

  const LaserPulseSpec& pump() const { return pump_; }
  const LaserPulseSpec& probe() const { return probe_; }
  double delay() const { return delay_; }
  double wavelength() const { return pump_.wavelength(); }

  PulsePair with_delay(double delay_s) const;
  PulsePair with_peak_fields(double pump_field, double probe_field) const;

 private:
  LaserPulseSpec pump_;
  LaserPulseSpec probe_;
  double delay_;
};

struct BeamCalibration {
  double average_power;    // W
  double repetition_rate;  // Hz
  double focus_fwhm;       // m

  void validate() const;
};

/// Peak optical field from average power:
///   F0 = sqrt(16 P / (f_rep d^2 t eps0 c (pi/ln2)^{3/2}))
double peak_field_from_power(const BeamCalibration& cal, double fwhm_duration_s);

/// Carrier-resolved two-pulse field at time t (V/m).
double field_at(const PulsePair& pair, double t);

struct FieldSample {
  double field;              // instantaneous real field, V/m
  double envelope_squared;   // |analytic field|^2, (V/m)^2
};

/// Instantaneous field together with the squared modulus of the analytic (carrier-free) field.
FieldSample sample_field(const PulsePair& pair, double t);

}  // namespace fetip

#endif
