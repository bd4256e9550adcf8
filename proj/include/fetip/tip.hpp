#ifndef FETIP_TIP_HPP
#define FETIP_TIP_HPP

#include <string>

namespace fetip {

inline constexpr double kDefaultWorkfunction = 4.5;    // eV, tungsten mid-range
inline constexpr double kDefaultGeometryFactor = 5.0;

/// Field-emission tip: DC field F = |V| / (k r), optical field enhancement l.
struct TipConfig {
  double workfunction = kDefaultWorkfunction;  // eV
  double radius = 40e-9;                       // m
  double geometry_factor = kDefaultGeometryFactor;
  double voltage = 0.0;                        // V, negative for emission bias
  double enhancement = 1.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  TipConfig with_voltage(double v) const;
};

/// Magnitude of the static extraction field at the apex, V/m.
double dc_field(const TipConfig& cfg);

/// Schottky-lowered barrier phi - sqrt(e F / (4 pi eps0)), in eV.
/// Throws std::domain_error when the barrier is fully suppressed.
double effective_workfunction(double phi_ev, double dc_field_v_per_m);

/// Smallest n with n * photon > phi_eff (strict).
int min_photon_number(double phi_eff_ev, double photon_ev);

/// gamma = w sqrt(2 m phi) / (e F_laser), with phi in eV and F_laser in V/m.
double keldysh(double phi_eff_ev, double wavelength_m, double laser_field_v_per_m);

/// Keldysh parameter at one operating point, evaluated both with the bare laser field and
/// with the tip enhancement applied.
struct KeldyshReport {
  double dc_field;               // V/m
  double effective_workfunction; // eV
  double photon_energy;          // eV
  double laser_field;            // V/m, bare
  double gamma_bare;
  double gamma_enhanced;         // with enhancement * laser_field
  double enhancement;
  /// Enhancement factors that would place gamma at 4 and at 3 respectively.
  double enhancement_for_gamma_4;
  double enhancement_for_gamma_3;
  bool photon_below_barrier;
  std::string note;
};

KeldyshReport keldysh_report(const TipConfig& tip, double wavelength_m,
                             double laser_field_v_per_m);

}  // namespace fetip

#endif
