#ifndef FETIP_EMISSION_HPP
#define FETIP_EMISSION_HPP

#include <vector>

#include "fetip/tip.hpp"

namespace fetip {

/// Field unit used inside every rate expression. Rates are in arbitrary units; expressing
/// fields in GV/m keeps c_n F^{2n} and F_tot^2 near unity for realistic tips.
inline constexpr double kRateFieldScale = 1e9;  // V/m

inline constexpr int kMaxMultiphotonOrder = 8;

/// Standard Fowler-Nordheim exponent constant (4/3) sqrt(2 m) / (e hbar), in V m^-1 eV^-3/2.
double standard_fn_constant();

/// n-photon over-the-barrier emission, rate = c_n (F cos(theta))^{2n}.
struct MultiphotonChannel {
  int order = 0;
  double coefficient = 0.0;

  void validate() const;
};

/// Photo-assisted tunnelling after absorbing `photons_absorbed` photons; the barrier seen by
/// the electron is phi - n hbar w.
struct FowlerNordheimChannel {
  int photons_absorbed = 0;
  double weight = 0.0;
  double c0_constant = standard_fn_constant();
};

class EmissionModel {
 public:
  /// Throws std::invalid_argument when a channel or the tip is invalid, when no channel is
  /// given, or when a tunnelling channel leaves no residual barrier.
  EmissionModel(std::vector<MultiphotonChannel> multiphoton,
                std::vector<FowlerNordheimChannel> tunneling, double polarization_angle,
                TipConfig tip, double photon_energy_ev);

  const std::vector<MultiphotonChannel>& multiphoton() const { return multiphoton_; }
  const std::vector<FowlerNordheimChannel>& tunneling() const { return tunneling_; }
  double polarization_angle() const { return theta_; }
  double cos_theta() const { return cos_theta_; }
  const TipConfig& tip() const { return tip_; }
  double photon_energy() const { return photon_energy_; }
  double dc_field() const { return dc_field_; }

  /// Residual barrier phi - n hbar w for a tunnelling channel, eV.
  double residual_barrier(const FowlerNordheimChannel& ch) const;

  EmissionModel with_polarization(double theta) const;
  EmissionModel with_tip(const TipConfig& tip) const;
  EmissionModel with_multiphoton(std::vector<MultiphotonChannel> channels) const;
  EmissionModel scaled(double factor) const;

 private:
  std::vector<MultiphotonChannel> multiphoton_;
  std::vector<FowlerNordheimChannel> tunneling_;
  double theta_;
  double cos_theta_;
  TipConfig tip_;
  double photon_energy_;
  double dc_field_;
};

/// c_n (f_laser cos(theta) / kRateFieldScale)^{2n}
double multiphoton_rate(const MultiphotonChannel& ch, double f_laser, double theta);

/// With F_tot = F_DC + l f_laser cos(theta) (in kRateFieldScale units) and B = phi - n hbar w:
///   a_n I^n F_tot^2 / B * exp(-C0 B^{3/2} / F_tot)   for F_tot > 0, else 0.
/// `laser_intensity_scale` is the envelope intensity in (kRateFieldScale)^2 units.
double fn_rate(const FowlerNordheimChannel& ch, double f_laser, const EmissionModel& model,
               double laser_intensity_scale);

/// Sum over every channel of the model.
double total_rate(const EmissionModel& model, double f_laser, double envelope_intensity_scale);

}  // namespace fetip

#endif
