#include "fetip/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "fetip/analysis.hpp"
#include "fetip/config.hpp"
#include "fetip/io.hpp"
#include "fetip/physcore.hpp"
#include "fetip/pulse.hpp"
#include "fetip/tip.hpp"

namespace fetip::cli {

namespace {

// Raised for bad inputs that are not config files (CSV, flags, unreadable paths).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw InputError("cannot open output file " + out_path);
  file << text;
  if (!file) throw InputError("failed writing " + out_path);
}

TraceColumns read_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open data file " + path);
  try {
    return read_trace_csv(in);
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ":" + std::string(e.what()).substr(5));
  }
}

int simulate(const std::string& config_path, const std::string& out_path, std::ostream& out,
             std::ostream& err) {
  const auto cfg = load_run_config(config_path);
  const auto trace = run_scan(cfg.scan);
  std::ostringstream csv;
  write_trace_csv(csv, trace);
  const std::string target = !out_path.empty() ? out_path : cfg.output_csv.value_or("");
  emit(csv.str(), target, out);
  if (!target.empty()) {
    err << fmt::format("{}: {} scan, {} points -> {}\n", cfg.scenario, to_string(trace.axis),
                       trace.size(), target);
  }
  return kExitOk;
}

std::string constants_text() {
  const auto& c = physical_constants;
  return fmt::format(
      "speed_of_light        {:.10e} m/s\n"
      "vacuum_permittivity   {:.10e} F/m\n"
      "elementary_charge     {:.10e} C\n"
      "electron_mass         {:.10e} kg\n"
      "reduced_planck        {:.10e} J s\n"
      "electronvolt          {:.10e} J\n"
      "fn_constant_c0        {:.10e} V m^-1 eV^-3/2\n",
      c.speed_of_light, c.vacuum_permittivity, c.elementary_charge, c.electron_mass,
      c.reduced_planck, c.electronvolt, standard_fn_constant());
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Femtosecond-laser-triggered field emission tip simulator and fitter", "fetip"};
  app.require_subcommand(1);

  std::string config_path, sim_out;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run the scan described by a JSON config, write CSV");
  simulate_cmd->add_option("config", config_path, "Run configuration (JSON)")->required();
  simulate_cmd->add_option("--out", sim_out, "Output CSV (default: output_csv from config, else stdout)");

  auto* fit_cmd = app.add_subcommand("fit", "Fit a CSV trace (axis,yield[,counts])");
  fit_cmd->require_subcommand(1);
  std::string data_path, fit_out;
  int max_order = 5;
  double phi = kDefaultWorkfunction, k = kDefaultGeometryFactor, c0 = standard_fn_constant();
  auto* power_sum = fit_cmd->add_subcommand("power-sum", "Non-negative sum of powers c_n P^n");
  power_sum->add_option("data", data_path)->required();
  power_sum->add_option("--max-order", max_order, "Highest order n")->check(CLI::Range(0, kMaxPowerSeriesOrder));
  power_sum->add_option("--out", fit_out);
  auto* single = fit_cmd->add_subcommand("single-power", "Single power law on log-log axes");
  single->add_option("data", data_path)->required();
  single->add_option("--out", fit_out);
  auto* fn = fit_cmd->add_subcommand("fn-radius", "Fowler-Nordheim tip radius from an I-V scan");
  fn->add_option("data", data_path)->required();
  fn->add_option("--phi", phi, "Workfunction, eV")->check(CLI::PositiveNumber);
  fn->add_option("--k", k, "Geometry factor")->check(CLI::PositiveNumber);
  fn->add_option("--c0", c0, "FN constant, V m^-1 eV^-3/2")->check(CLI::PositiveNumber);
  fn->add_option("--out", fit_out);

  TipConfig tip;
  tip.voltage = -450.0;
  double radius_nm = 40.0, wavelength_nm = 810.0, field_gv = 0.0;
  double power_mw = 40.0, fwhm_fs = 50.0, rep_mhz = 75.0, focus_um = 4.0;
  auto* keldysh_cmd = app.add_subcommand("keldysh", "Keldysh parameter at one operating point (JSON)");
  keldysh_cmd->add_option("--phi", tip.workfunction, "Workfunction, eV")->check(CLI::PositiveNumber);
  keldysh_cmd->add_option("--voltage", tip.voltage, "Tip voltage, V");
  keldysh_cmd->add_option("--radius-nm", radius_nm)->check(CLI::PositiveNumber);
  keldysh_cmd->add_option("--k", tip.geometry_factor)->check(CLI::PositiveNumber);
  keldysh_cmd->add_option("--enhancement", tip.enhancement)->check(CLI::Range(1.0, 1e6));
  keldysh_cmd->add_option("--wavelength-nm", wavelength_nm)->check(CLI::PositiveNumber);
  auto* field_opt = keldysh_cmd->add_option("--laser-field-gv", field_gv, "Peak laser field, GV/m")
                        ->check(CLI::PositiveNumber);
  keldysh_cmd->add_option("--power-mw", power_mw, "Average power (used when no field is given)")
      ->check(CLI::PositiveNumber)->excludes(field_opt);
  keldysh_cmd->add_option("--fwhm-fs", fwhm_fs)->check(CLI::PositiveNumber);
  keldysh_cmd->add_option("--rep-rate-mhz", rep_mhz)->check(CLI::PositiveNumber);
  keldysh_cmd->add_option("--focus-um", focus_um)->check(CLI::PositiveNumber);

  auto* constants_cmd = app.add_subcommand("constants", "Print the physical constants in use");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (*simulate_cmd) return simulate(config_path, sim_out, out, err);
    if (*constants_cmd) {
      out << constants_text();
      return kExitOk;
    }
    if (*keldysh_cmd) {
      tip.radius = radius_nm * 1e-9;
      const double wavelength = wavelength_nm * 1e-9;
      const double field = *field_opt
          ? field_gv * 1e9
          : peak_field_from_power({power_mw * 1e-3, rep_mhz * 1e6, focus_um * 1e-6}, fwhm_fs * 1e-15);
      const auto r = keldysh_report(tip, wavelength, field);
      const nlohmann::json j{{"dc_field_v_per_m", r.dc_field},
                             {"effective_workfunction_ev", r.effective_workfunction},
                             {"photon_energy_ev", r.photon_energy},
                             {"laser_field_v_per_m", r.laser_field},
                             {"enhancement", r.enhancement},
                             {"gamma", r.gamma_bare},
                             {"gamma_enhanced", r.gamma_enhanced},
                             {"enhancement_for_gamma_4", r.enhancement_for_gamma_4},
                             {"enhancement_for_gamma_3", r.enhancement_for_gamma_3},
                             {"photon_below_barrier", r.photon_below_barrier},
                             {"note", r.note}};
      out << j.dump(2) << '\n';
      return kExitOk;
    }
    if (*fit_cmd) {
      const auto data = read_data(data_path);
      nlohmann::json report;
      if (*power_sum) {
        report = fit_report(fit_power_sum(data.axis, data.signal(), max_order));
      } else if (*single) {
        report = fit_report(fit_single_power(data.axis, data.signal()));
      } else {
        report = fit_report(fit_fn_radius(data.axis, data.signal(), phi, k, c0));
      }
      emit(report.dump(2) + "\n", fit_out, out);
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitValidation;
}

}  // namespace fetip::cli
