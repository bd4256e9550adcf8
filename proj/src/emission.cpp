#include "fetip/emission.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fetip/physcore.hpp"

namespace fetip {

namespace {

double int_pow(double x, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= x;
  return out;
}

}  // namespace

double standard_fn_constant() {
  using namespace constants;
  const double si = (4.0 / 3.0) * std::sqrt(2.0 * electron_mass) /
                    (elementary_charge * reduced_planck);  // V/m per J^{3/2}
  return si * std::pow(electronvolt, 1.5);
}

void MultiphotonChannel::validate() const {
  if (order < 0 || order > kMaxMultiphotonOrder) {
    throw std::invalid_argument("multiphoton order must be in [0, " +
                                std::to_string(kMaxMultiphotonOrder) + "]");
  }
  if (!(coefficient >= 0.0) || !std::isfinite(coefficient)) {
    throw std::invalid_argument("multiphoton coefficient must be >= 0");
  }
}

EmissionModel::EmissionModel(std::vector<MultiphotonChannel> multiphoton,
                             std::vector<FowlerNordheimChannel> tunneling,
                             double polarization_angle, TipConfig tip, double photon_energy_ev)
    : multiphoton_(std::move(multiphoton)),
      tunneling_(std::move(tunneling)),
      theta_(polarization_angle),
      cos_theta_(std::cos(polarization_angle)),
      tip_(tip),
      photon_energy_(photon_energy_ev) {
  tip_.validate();
  if (multiphoton_.empty() && tunneling_.empty()) {
    throw std::invalid_argument("emission model needs at least one channel");
  }
  if (!(theta_ >= 0.0 && theta_ <= std::numbers::pi)) {
    throw std::invalid_argument("polarization angle must be in [0, pi]");
  }
  if (!(photon_energy_ > 0.0)) throw std::invalid_argument("photon energy must be > 0");
  for (const auto& ch : multiphoton_) ch.validate();
  for (const auto& ch : tunneling_) {
    if (ch.photons_absorbed < 0) throw std::invalid_argument("photons_absorbed must be >= 0");
    if (!(ch.weight >= 0.0) || !std::isfinite(ch.weight)) {
      throw std::invalid_argument("tunneling weight must be >= 0");
    }
    if (!(ch.c0_constant > 0.0)) throw std::invalid_argument("c0_constant must be > 0");
    if (!(residual_barrier(ch) > 0.0)) {
      throw std::invalid_argument("tunneling channel with " +
                                  std::to_string(ch.photons_absorbed) +
                                  " photons leaves no barrier (phi - n*hbar*w <= 0)");
    }
  }
  dc_field_ = fetip::dc_field(tip_);
}

double EmissionModel::residual_barrier(const FowlerNordheimChannel& ch) const {
  return tip_.workfunction - ch.photons_absorbed * photon_energy_;
}

EmissionModel EmissionModel::with_polarization(double theta) const {
  return EmissionModel(multiphoton_, tunneling_, theta, tip_, photon_energy_);
}

EmissionModel EmissionModel::with_tip(const TipConfig& tip) const {
  return EmissionModel(multiphoton_, tunneling_, theta_, tip, photon_energy_);
}

EmissionModel EmissionModel::with_multiphoton(std::vector<MultiphotonChannel> channels) const {
  return EmissionModel(std::move(channels), tunneling_, theta_, tip_, photon_energy_);
}

EmissionModel EmissionModel::scaled(double factor) const {
  auto mp = multiphoton_;
  auto fn = tunneling_;
  for (auto& ch : mp) ch.coefficient *= factor;
  for (auto& ch : fn) ch.weight *= factor;
  return EmissionModel(std::move(mp), std::move(fn), theta_, tip_, photon_energy_);
}

double multiphoton_rate(const MultiphotonChannel& ch, double f_laser, double theta) {
  const double x = f_laser * std::cos(theta) / kRateFieldScale;
  return ch.coefficient * int_pow(x * x, ch.order);
}

double fn_rate(const FowlerNordheimChannel& ch, double f_laser, const EmissionModel& model,
               double laser_intensity_scale) {
  const double f_tot =
      (model.dc_field() + model.tip().enhancement * f_laser * model.cos_theta()) /
      kRateFieldScale;
  if (!(f_tot > 0.0)) return 0.0;
  const double barrier = model.residual_barrier(ch);
  // C0 is per V/m; F_tot is in kRateFieldScale units here.
  const double exponent = ch.c0_constant / kRateFieldScale * barrier * std::sqrt(barrier) / f_tot;
  return ch.weight * int_pow(laser_intensity_scale, ch.photons_absorbed) * f_tot * f_tot / barrier *
         std::exp(-exponent);
}

double total_rate(const EmissionModel& model, double f_laser, double envelope_intensity_scale) {
  double sum = 0.0;
  if (!model.multiphoton().empty()) {
    const double x = f_laser * model.cos_theta() / kRateFieldScale;
    const double x2 = x * x;
    for (const auto& ch : model.multiphoton()) sum += ch.coefficient * int_pow(x2, ch.order);
  }
  for (const auto& ch : model.tunneling()) {
    sum += fn_rate(ch, f_laser, model, envelope_intensity_scale);
  }
  return sum;
}

}  // namespace fetip
