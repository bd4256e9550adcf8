#ifndef FETIP_PHYSCORE_HPP
#define FETIP_PHYSCORE_HPP

#include <numbers>

namespace fetip {

//
// Physical constants (SI). Exact 2019 SI values where defined, CODATA 2018 otherwise.
//
namespace constants {

inline constexpr double pi = std::numbers::pi;

inline constexpr double speed_of_light = 299792458.0;          // m/s, exact
inline constexpr double planck = 6.62607015e-34;               // J s, exact
inline constexpr double reduced_planck = planck / (2.0 * pi);  // J s
inline constexpr double elementary_charge = 1.602176634e-19;   // C, exact
inline constexpr double electronvolt = elementary_charge;      // J per eV
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double electron_mass = 9.1093837015e-31;      // kg

}  // namespace constants

struct PhysicalConstants {
  double speed_of_light = constants::speed_of_light;
  double vacuum_permittivity = constants::vacuum_permittivity;
  double elementary_charge = constants::elementary_charge;
  double electron_mass = constants::electron_mass;
  double reduced_planck = constants::reduced_planck;
  double electronvolt = constants::electronvolt;
};

inline constexpr PhysicalConstants physical_constants{};

/// Photon energy hc/lambda in eV. Throws std::domain_error for wavelength <= 0.
double photon_energy(double wavelength_m);

/// Carrier angular frequency 2 pi c / lambda in rad/s.
double angular_frequency(double wavelength_m);

/// Optical period lambda / c in s.
double optical_period(double wavelength_m);

constexpr double ev_to_joule(double ev) { return ev * constants::electronvolt; }
constexpr double joule_to_ev(double joule) { return joule / constants::electronvolt; }

// API-boundary helpers
constexpr double nm(double v) { return v * 1e-9; }
constexpr double um(double v) { return v * 1e-6; }
constexpr double fs(double v) { return v * 1e-15; }
constexpr double gv_per_m(double v) { return v * 1e9; }

}  // namespace fetip

#endif
