#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fetip/emission.hpp"
#include "fetip/physcore.hpp"

using namespace fetip;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

TipConfig tip_at(double voltage, double enhancement = 1.0) {
  TipConfig t;
  t.voltage = voltage;
  t.enhancement = enhancement;
  return t;
}

EmissionModel fn_only(double voltage, int photons = 0, double theta = 0.0, double enhancement = 1.0) {
  return EmissionModel({}, {{photons, 1.0}}, theta, tip_at(voltage, enhancement), photon_energy(nm(810)));
}

}  // namespace

TEST_CASE("standard FN constant") {
  CHECK(standard_fn_constant() == Approx(6.83e9).epsilon(1e-3));
}

TEST_CASE("multiphoton rate examples") {
  const MultiphotonChannel n4{4, 1.0};
  CHECK(multiphoton_rate(n4, 7e8, kPi / 2) < 1e-100);
  CHECK(multiphoton_rate(n4, 7e8, kPi / 3) / multiphoton_rate(n4, 7e8, 0.0) == Approx(1.0 / 256).epsilon(1e-12));
  CHECK(multiphoton_rate(n4, 1.4e9, 0.0) / multiphoton_rate(n4, 0.7e9, 0.0) == Approx(256).epsilon(1e-12));
  // field in GV/m inside the rate
  CHECK(multiphoton_rate({4, 3.0}, 0.5e9, 0.0) == Approx(3.0 * std::pow(0.5, 8)).epsilon(1e-14));
  CHECK(multiphoton_rate({0, 2.5}, 0.3e9, 1.0) == 2.5);
}

TEST_CASE("property: multiphoton rate symmetry, polarization and slope") {
  for (int n = 1; n <= 8; ++n) {
    const MultiphotonChannel ch{n, 0.7};
    for (double f = -2e9; f <= 2e9; f += 0.37e9) {
      CHECK(multiphoton_rate(ch, f, 0.3) == Approx(multiphoton_rate(ch, -f, 0.3)).epsilon(1e-15));
      for (double theta = 0.0; theta <= kPi; theta += 0.2) {
        CHECK(multiphoton_rate(ch, f, theta) ==
              Approx(multiphoton_rate(ch, f, 0.0) * std::pow(std::cos(theta), 2 * n)).epsilon(1e-12));
      }
    }
    // log rate vs log F^2 has slope n
    const double f1 = 0.3e9, f2 = 1.1e9;
    const double slope = std::log(multiphoton_rate(ch, f2, 0) / multiphoton_rate(ch, f1, 0)) /
                         std::log((f2 * f2) / (f1 * f1));
    CHECK(slope == Approx(n).epsilon(1e-12));
  }
}

TEST_CASE("multiphoton channel validation") {
  CHECK_THROWS_AS((MultiphotonChannel{9, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((MultiphotonChannel{-1, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((MultiphotonChannel{3, -1.0}.validate()), std::invalid_argument);
}

TEST_CASE("emission model validation") {
  const double photon = photon_energy(nm(810));
  CHECK_THROWS_AS(EmissionModel({}, {}, 0.0, tip_at(-50), photon), std::invalid_argument);
  CHECK_THROWS_AS(EmissionModel({{4, 1}}, {}, -0.1, tip_at(-50), photon), std::invalid_argument);
  CHECK_THROWS_AS(EmissionModel({{4, 1}}, {}, 3.2, tip_at(-50), photon), std::invalid_argument);
  // 3 photons of 1.53 eV leave 0.41 eV of a 4.5 eV barrier; 3 of a 4.0 eV barrier at 1.4 eV do not.
  CHECK_NOTHROW(EmissionModel({}, {{2, 1}}, 0.0, tip_at(-50), photon));
  TipConfig low = tip_at(-50);
  low.workfunction = 4.0;
  CHECK_THROWS_AS(EmissionModel({}, {{3, 1}}, 0.0, low, 1.4), std::invalid_argument);
  FowlerNordheimChannel bad_c0{0, 1.0, 0.0};
  CHECK_THROWS_AS(EmissionModel({}, {bad_c0}, 0.0, tip_at(-50), photon), std::invalid_argument);
}

TEST_CASE("FN rate examples") {
  // no extraction field
  const auto zero_dc = fn_only(0.0);
  CHECK(fn_rate(zero_dc.tunneling()[0], 0.0, zero_dc, 0.0) == 0.0);
  CHECK(fn_rate(zero_dc.tunneling()[0], -1e8, zero_dc, 0.0) == 0.0);

  // n = 0, f_laser = 0, phi = 4.5 eV, F_DC = 2.25 GV/m: exponential factor exp(-28.98)
  const auto dc = fn_only(-450.0);
  const FowlerNordheimChannel ch{0, 1.0, 6.83e9};
  const double rate = fn_rate(ch, 0.0, dc, 0.0);
  const double prefactor = 2.25 * 2.25 / 4.5;
  CHECK(rate / prefactor == Approx(2.6e-13).epsilon(0.02));
  CHECK(std::log(rate / prefactor) == Approx(-6.83e9 * std::pow(4.5, 1.5) / 2.25e9).epsilon(1e-12));

  // n = 0 DC channel ignores the laser intensity scale
  CHECK(fn_rate(ch, 0.0, dc, 0.0) == fn_rate(ch, 0.0, dc, 5.0));
}

TEST_CASE("FN rate uses the bare barrier and intensity power") {
  const auto model = fn_only(-300.0, 2);
  const auto& ch = model.tunneling()[0];
  const double barrier = 4.5 - 2 * photon_energy(nm(810));
  CHECK(model.residual_barrier(ch) == Approx(barrier).epsilon(1e-14));
  const double f_tot = 1.5;
  const double expected = 0.49 * f_tot * f_tot / barrier *
                          std::exp(-ch.c0_constant / 1e9 * std::pow(barrier, 1.5) / f_tot);
  CHECK(fn_rate(ch, 0.0, model, 0.7) == Approx(expected).epsilon(1e-12));
}

TEST_CASE("FN total field includes enhancement and polarization") {
  const auto m = fn_only(-50.0, 0, kPi / 3, 2.0);
  const auto ref = fn_only(-50.0 - 5.0 * 40e-9 * 0.3e9, 0, 0.0, 1.0);  // F_DC' = 0.25 + 2*0.3*0.5
  CHECK(fn_rate(m.tunneling()[0], 0.3e9, m, 0.0) ==
        Approx(fn_rate(ref.tunneling()[0], 0.0, ref, 0.0)).epsilon(1e-10));
}

TEST_CASE("property: FN rate continuous at F_tot = 0 and increasing above") {
  const auto m = fn_only(-50.0);
  const auto& ch = m.tunneling()[0];
  // F_tot = 0 at f_laser = -0.25 GV/m
  CHECK(fn_rate(ch, -0.25e9 + 1.0, m, 0.0) < 1e-300);
  CHECK(fn_rate(ch, -0.25e9 - 1.0, m, 0.0) == 0.0);
  double last = 0.0;
  for (double f = -0.24e9; f < 3e9; f += 0.05e9) {
    const double r = fn_rate(ch, f, m, 0.0);
    CHECK(r >= last);
    if (last > 0.0) CHECK(r > last);
    last = r;
  }
}

TEST_CASE("total rate examples") {
  const double photon = photon_energy(nm(810));
  const auto dc_model = fn_only(-450.0);
  CHECK(total_rate(dc_model, 0.0, 0.0) == fn_rate(dc_model.tunneling()[0], 0.0, dc_model, 0.0));

  const EmissionModel n4({{4, 2.0}}, {}, 0.0, tip_at(-50), photon);
  CHECK(total_rate(n4, 0.8e9, 0.64) == Approx(2.0 * std::pow(0.8, 8)).epsilon(1e-14));

  const EmissionModel mix({{2, 1.0}, {3, 0.5}, {4, 0.25}}, {}, 0.0, tip_at(-50), photon);
  for (double f = 0.1e9; f < 2e9; f += 0.1e9) {
    const double total = total_rate(mix, f, 0.0);
    for (const auto& ch : mix.multiphoton()) CHECK(total > multiphoton_rate(ch, f, 0.0));
  }
}
