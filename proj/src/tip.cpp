#include "fetip/tip.hpp"

#include <cmath>
#include <fmt/core.h>
#include <stdexcept>

#include "fetip/physcore.hpp"

namespace fetip {

void TipConfig::validate() const {
  if (!(workfunction > 0.0)) throw std::invalid_argument("workfunction must be > 0");
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be > 0");
  if (!(geometry_factor > 0.0)) throw std::invalid_argument("geometry_factor must be > 0");
  if (!std::isfinite(voltage)) throw std::invalid_argument("voltage must be finite");
  if (!(enhancement >= 1.0)) throw std::invalid_argument("enhancement must be >= 1");
}

TipConfig TipConfig::with_voltage(double v) const {
  TipConfig out = *this;
  out.voltage = v;
  return out;
}

double dc_field(const TipConfig& cfg) {
  cfg.validate();
  return std::abs(cfg.voltage) / (cfg.geometry_factor * cfg.radius);
}

double effective_workfunction(double phi_ev, double dc_field_v_per_m) {
  if (!(phi_ev > 0.0)) throw std::domain_error("workfunction must be > 0");
  if (!(dc_field_v_per_m >= 0.0)) throw std::domain_error("dc field must be >= 0");
  using namespace constants;
  // e F / (4 pi eps0) is in V^2, so its root is the lowering in eV.
  const double lowering =
      std::sqrt(elementary_charge * dc_field_v_per_m / (4.0 * pi * vacuum_permittivity));
  const double phi_eff = phi_ev - lowering;
  if (!(phi_eff > 0.0)) throw std::domain_error("barrier fully suppressed");
  return phi_eff;
}

int min_photon_number(double phi_eff_ev, double photon_ev) {
  if (!(phi_eff_ev > 0.0) || !(photon_ev > 0.0)) {
    throw std::domain_error("min_photon_number requires positive energies");
  }
  auto n = static_cast<int>(std::floor(phi_eff_ev / photon_ev));
  while (n * photon_ev <= phi_eff_ev) ++n;
  while (n > 1 && (n - 1) * photon_ev > phi_eff_ev) --n;
  return n;
}

double keldysh(double phi_eff_ev, double wavelength_m, double laser_field_v_per_m) {
  if (!(phi_eff_ev > 0.0)) throw std::domain_error("keldysh: workfunction must be > 0");
  if (!(laser_field_v_per_m > 0.0)) throw std::domain_error("keldysh: laser field must be > 0");
  using namespace constants;
  const double omega = angular_frequency(wavelength_m);
  return omega * std::sqrt(2.0 * electron_mass * ev_to_joule(phi_eff_ev)) /
         (elementary_charge * laser_field_v_per_m);
}

KeldyshReport keldysh_report(const TipConfig& tip, double wavelength_m,
                             double laser_field_v_per_m) {
  KeldyshReport r{};
  r.dc_field = dc_field(tip);
  r.effective_workfunction = effective_workfunction(tip.workfunction, r.dc_field);
  r.photon_energy = photon_energy(wavelength_m);
  r.laser_field = laser_field_v_per_m;
  r.enhancement = tip.enhancement;
  r.gamma_bare = keldysh(r.effective_workfunction, wavelength_m, laser_field_v_per_m);
  r.gamma_enhanced =
      keldysh(r.effective_workfunction, wavelength_m, tip.enhancement * laser_field_v_per_m);
  r.enhancement_for_gamma_4 = r.gamma_bare / 4.0;
  r.enhancement_for_gamma_3 = r.gamma_bare / 3.0;
  r.photon_below_barrier = r.photon_energy < r.effective_workfunction;
  r.note = fmt::format(
      "gamma = w*sqrt(2*m*phi_eff)/(e*F_laser) evaluates to {:.3g} with the bare laser field. "
      "The frequently quoted range 3-4 for this operating point is not reproduced by this "
      "formula; it would need an effective optical field enhancement of {:.3g}-{:.3g}.",
      r.gamma_bare, r.enhancement_for_gamma_4, r.enhancement_for_gamma_3);
  return r;
}

}  // namespace fetip
