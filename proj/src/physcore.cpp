#include "fetip/physcore.hpp"

#include <stdexcept>
#include <string>

namespace fetip {

namespace {

void require_positive_wavelength(double wavelength_m, const char* what) {
  if (!(wavelength_m > 0.0)) {
    throw std::domain_error(std::string(what) + ": wavelength must be > 0");
  }
}

}  // namespace

double photon_energy(double wavelength_m) {
  require_positive_wavelength(wavelength_m, "photon_energy");
  return joule_to_ev(constants::planck * constants::speed_of_light / wavelength_m);
}

double angular_frequency(double wavelength_m) {
  require_positive_wavelength(wavelength_m, "angular_frequency");
  return 2.0 * constants::pi * constants::speed_of_light / wavelength_m;
}

double optical_period(double wavelength_m) {
  require_positive_wavelength(wavelength_m, "optical_period");
  return wavelength_m / constants::speed_of_light;
}

}  // namespace fetip
