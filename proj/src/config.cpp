#include "fetip/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <vector>

#include <fmt/core.h>
#include <json.hpp>

#include "fetip/physcore.hpp"

namespace fetip {

using nlohmann::json;

ConfigError::ConfigError(const std::string& source, int line, const std::string& path,
                         const std::string& message)
    : std::runtime_error(fmt::format("{}:{}: {}: {}", source, line, path, message)),
      line_(line),
      path_(path) {}

namespace {

struct PathStep {
  std::string key;
  int index = -1;  // >= 0 for an element of an array of objects
};

class Context {
 public:
  Context(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::vector<PathStep>& path, const std::string& message) const {
    throw ConfigError(source_, locate(path), format(path), message);
  }

  static std::string format(const std::vector<PathStep>& path) {
    std::string out;
    for (const auto& step : path) {
      if (step.index >= 0) {
        out += fmt::format("[{}]", step.index);
      } else {
        if (!out.empty()) out += '.';
        out += step.key;
      }
    }
    return out.empty() ? "<root>" : out;
  }

 private:
  // Best-effort line of the last path element: walks quoted keys in document order.
  int locate(const std::vector<PathStep>& path) const {
    std::size_t pos = 0;
    std::size_t found = 0;
    for (const auto& step : path) {
      if (step.index >= 0) {
        auto open = text_.find('[', pos);
        if (open == std::string::npos) break;
        pos = open;
        for (int i = 0; i <= step.index; ++i) {
          auto brace = text_.find('{', pos + 1);
          if (brace == std::string::npos) break;
          pos = brace;
        }
        found = pos;
      } else {
        auto at = text_.find('"' + step.key + '"', pos);
        if (at == std::string::npos) break;
        pos = found = at;
      }
    }
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + found, '\n'));
  }

  const std::string& text_;
  std::string source_;
};

class Node {
 public:
  Node(const json& value, std::vector<PathStep> path, const Context& ctx)
      : value_(value), path_(std::move(path)), ctx_(ctx) {
    if (!value_.is_object()) ctx_.fail(path_, "expected an object");
  }

  void allow(std::initializer_list<const char*> keys) const {
    std::set<std::string> known(keys.begin(), keys.end());
    for (auto it = value_.begin(); it != value_.end(); ++it) {
      if (!known.count(it.key())) ctx_.fail(child(it.key()), "unknown key");
    }
  }

  bool has(const char* key) const { return value_.contains(key); }

  std::vector<PathStep> child(const std::string& key) const {
    auto p = path_;
    p.push_back({key});
    return p;
  }

  [[noreturn]] void fail(const char* key, const std::string& message) const {
    ctx_.fail(key ? child(key) : path_, message);
  }

  Node object(const char* key) const {
    if (!has(key)) fail(key, "required block is missing");
    return Node(value_.at(key), child(key), ctx_);
  }

  std::optional<double> optional_number(const char* key) const {
    if (!has(key)) return std::nullopt;
    const auto& v = value_.at(key);
    if (!v.is_number()) fail(key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(key, "expected a finite number");
    return d;
  }

  double number(const char* key) const {
    auto v = optional_number(key);
    if (!v) fail(key, "required value is missing");
    return *v;
  }

  double number(const char* key, double fallback) const {
    return optional_number(key).value_or(fallback);
  }

  double positive(const char* key) const {
    const double v = number(key);
    if (!(v > 0.0)) fail(key, fmt::format("must be > 0 (got {})", v));
    return v;
  }

  std::optional<std::int64_t> optional_integer(const char* key) const {
    if (!has(key)) return std::nullopt;
    const auto& v = value_.at(key);
    if (!v.is_number_integer()) fail(key, "expected an integer");
    return v.get<std::int64_t>();
  }

  std::string string(const char* key) const {
    if (!has(key)) fail(key, "required value is missing");
    const auto& v = value_.at(key);
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
  }

  std::vector<Node> objects(const char* key) const {
    std::vector<Node> out;
    if (!has(key)) return out;
    const auto& arr = value_.at(key);
    if (!arr.is_array()) fail(key, "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      auto p = child(key);
      p.push_back({"", static_cast<int>(i)});
      out.emplace_back(arr[i], p, ctx_);
    }
    return out;
  }

  const json& raw(const char* key) const { return value_.at(key); }

 private:
  const json& value_;
  std::vector<PathStep> path_;
  const Context& ctx_;
};

const char* grid_key(ScanAxis axis) {
  switch (axis) {
    case ScanAxis::delay: return "delay_fs";
    case ScanAxis::power: return "power_mw";
    case ScanAxis::polarization: return "polarization_deg";
    case ScanAxis::voltage: return "voltage_v";
  }
  return "";
}

double grid_unit(ScanAxis axis) {
  switch (axis) {
    case ScanAxis::delay: return 1e-15;
    case ScanAxis::power: return 1e-3;
    case ScanAxis::polarization: return std::numbers::pi / 180.0;
    case ScanAxis::voltage: return 1.0;
  }
  return 1.0;
}

std::vector<double> parse_grid(const Node& grid, ScanAxis axis) {
  grid.allow({"min", "max", "points", "spacing", "values"});
  std::vector<double> values;
  if (grid.has("values")) {
    if (grid.has("min") || grid.has("max") || grid.has("points") || grid.has("spacing")) {
      grid.fail("values", "give either explicit values or min/max/points, not both");
    }
    const auto& arr = grid.raw("values");
    if (!arr.is_array() || arr.empty()) grid.fail("values", "expected a non-empty array");
    for (const auto& v : arr) {
      if (!v.is_number()) grid.fail("values", "expected numbers");
      values.push_back(v.get<double>());
    }
  } else {
    const double lo = grid.number("min");
    const double hi = grid.number("max");
    const auto points = grid.optional_integer("points");
    if (!points) grid.fail("points", "required value is missing");
    if (*points < 1) grid.fail("points", "must be >= 1");
    if (*points > 100000) grid.fail("points", "must be <= 100000");
    const std::string spacing = grid.has("spacing") ? grid.string("spacing") : "linear";
    if (spacing != "linear" && spacing != "log") grid.fail("spacing", "must be 'linear' or 'log'");
    if (*points > 1 && !(hi != lo)) grid.fail("max", "must differ from min");
    if (spacing == "log" && !(lo > 0.0 && hi > 0.0)) grid.fail("min", "log spacing needs min, max > 0");
    const auto n = static_cast<std::size_t>(*points);
    for (std::size_t i = 0; i < n; ++i) {
      const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
      values.push_back(spacing == "log" ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
    }
  }
  for (auto& v : values) v *= grid_unit(axis);
  return values;
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto offset = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
    throw ConfigError(source, line, "<root>", "malformed JSON");
  }
  Context ctx(text, source);
  Node root(doc, {}, ctx);
  root.allow({"scenario", "pulse", "beam", "tip", "model", "scan", "integration", "output_csv"});

  const auto scenario = root.string("scenario");
  std::optional<std::string> output_csv;
  if (root.has("output_csv")) output_csv = root.string("output_csv");

  // beam
  const auto beam = root.object("beam");
  beam.allow({"rep_rate_mhz", "focus_fwhm_um"});
  BeamCalibration cal{1.0, beam.positive("rep_rate_mhz") * 1e6, beam.positive("focus_fwhm_um") * 1e-6};

  // pulse
  const auto pulse = root.object("pulse");
  pulse.allow({"wavelength_nm", "fwhm_fs", "tbp", "chirp_per_fs2", "pump_power_mw",
               "pump_field_gv_per_m", "probe_power_mw", "probe_field_gv_per_m", "delay_fs"});
  const double wavelength = pulse.positive("wavelength_nm") * 1e-9;
  const double fwhm = pulse.positive("fwhm_fs") * 1e-15;
  double chirp = 0.0;
  if (pulse.has("tbp") && pulse.has("chirp_per_fs2")) {
    pulse.fail("chirp_per_fs2", "give either tbp or chirp_per_fs2, not both");
  }
  if (pulse.has("tbp")) {
    const double tbp = pulse.number("tbp");
    if (tbp < kGaussianTransformLimit) {
      pulse.fail("tbp", fmt::format("must be >= {} (Gaussian transform limit)", kGaussianTransformLimit));
    }
    chirp = chirp_from_tbp(fwhm, tbp);
  } else if (pulse.has("chirp_per_fs2")) {
    chirp = pulse.number("chirp_per_fs2") * 1e30;
  }
  auto peak_field = [&](const char* power_key, const char* field_key, bool required) {
    if (pulse.has(power_key) && pulse.has(field_key)) {
      pulse.fail(field_key, fmt::format("give either {} or {}, not both", power_key, field_key));
    }
    if (pulse.has(field_key)) {
      const double f = pulse.number(field_key);
      if (!(f >= 0.0)) pulse.fail(field_key, "must be >= 0");
      return f * 1e9;
    }
    if (pulse.has(power_key)) {
      const double p = pulse.number(power_key);
      if (!(p >= 0.0)) pulse.fail(power_key, "must be >= 0");
      if (p == 0.0) return 0.0;
      BeamCalibration c = cal;
      c.average_power = p * 1e-3;
      return peak_field_from_power(c, fwhm);
    }
    if (required) pulse.fail(power_key, fmt::format("required: {} or {}", power_key, field_key));
    return 0.0;
  };
  const double pump_field = peak_field("pump_power_mw", "pump_field_gv_per_m", true);
  const double probe_field = peak_field("probe_power_mw", "probe_field_gv_per_m", false);
  // Record the configured pump power; power scans replace it per grid point.
  if (pulse.has("pump_power_mw") && pulse.number("pump_power_mw") > 0.0) {
    cal.average_power = pulse.number("pump_power_mw") * 1e-3;
  }
  const double delay = pulse.number("delay_fs", 0.0) * 1e-15;
  const LaserPulseSpec pump(pump_field, wavelength, fwhm, chirp);
  const PulsePair pair(pump, pump.with_peak_field(probe_field), delay);

  // tip
  TipConfig tip;
  if (root.has("tip")) {
    const auto t = root.object("tip");
    t.allow({"phi_ev", "radius_nm", "k", "voltage_v", "enhancement"});
    tip.workfunction = t.number("phi_ev", tip.workfunction);
    tip.radius = t.number("radius_nm", tip.radius * 1e9) * 1e-9;
    tip.geometry_factor = t.number("k", tip.geometry_factor);
    tip.voltage = t.number("voltage_v", tip.voltage);
    tip.enhancement = t.number("enhancement", tip.enhancement);
    if (!(tip.workfunction > 0.0)) t.fail("phi_ev", "must be > 0");
    if (!(tip.radius > 0.0)) t.fail("radius_nm", "must be > 0");
    if (!(tip.geometry_factor > 0.0)) t.fail("k", "must be > 0");
    if (!(tip.enhancement >= 1.0)) t.fail("enhancement", "must be >= 1");
  }

  // model
  const auto model = root.object("model");
  model.allow({"polarization_deg", "multiphoton", "tunneling"});
  const double theta_deg = model.number("polarization_deg", 0.0);
  if (!(theta_deg >= 0.0 && theta_deg <= 180.0)) model.fail("polarization_deg", "must be in [0, 180]");
  std::vector<MultiphotonChannel> multiphoton;
  for (const auto& ch : model.objects("multiphoton")) {
    ch.allow({"order", "coefficient"});
    const auto order = ch.optional_integer("order");
    if (!order) ch.fail("order", "required value is missing");
    if (*order < 0 || *order > kMaxMultiphotonOrder) {
      ch.fail("order", fmt::format("must be in [0, {}]", kMaxMultiphotonOrder));
    }
    const double c = ch.number("coefficient");
    if (!(c >= 0.0)) ch.fail("coefficient", "must be >= 0");
    multiphoton.push_back({static_cast<int>(*order), c});
  }
  const double photon = photon_energy(wavelength);
  std::vector<FowlerNordheimChannel> tunneling;
  for (const auto& ch : model.objects("tunneling")) {
    ch.allow({"photons", "weight", "c0_v_per_m_ev15"});
    const auto n = ch.optional_integer("photons");
    if (!n) ch.fail("photons", "required value is missing");
    if (*n < 0 || *n > kMaxMultiphotonOrder) ch.fail("photons", "must be in [0, 8]");
    FowlerNordheimChannel fn;
    fn.photons_absorbed = static_cast<int>(*n);
    fn.weight = ch.number("weight");
    if (!(fn.weight >= 0.0)) ch.fail("weight", "must be >= 0");
    if (ch.has("c0_v_per_m_ev15")) fn.c0_constant = ch.positive("c0_v_per_m_ev15");
    if (!(tip.workfunction - fn.photons_absorbed * photon > 0.0)) {
      ch.fail("photons", fmt::format("{} photons of {:.4g} eV leave no barrier below phi = {} eV",
                                     fn.photons_absorbed, photon, tip.workfunction));
    }
    tunneling.push_back(fn);
  }
  if (multiphoton.empty() && tunneling.empty()) {
    model.fail(nullptr, "needs at least one multiphoton or tunneling channel");
  }

  // scan
  const auto scan = root.object("scan");
  scan.allow({"axis", "delay_fs", "power_mw", "polarization_deg", "voltage_v", "seed", "noise_scale"});
  const auto axis_name = scan.string("axis");
  const auto axis = parse_scan_axis(axis_name);
  if (!axis) scan.fail("axis", "must be one of delay, power, polarization, voltage");
  for (auto other : {ScanAxis::delay, ScanAxis::power, ScanAxis::polarization, ScanAxis::voltage}) {
    if (other != *axis && scan.has(grid_key(other))) {
      scan.fail(grid_key(other), fmt::format("grid does not match axis '{}'", axis_name));
    }
  }
  auto grid = parse_grid(scan.object(grid_key(*axis)), *axis);
  if (*axis == ScanAxis::power) {
    for (double p : grid) {
      if (!(p > 0.0)) scan.fail("power_mw", "powers must be > 0");
    }
  }
  std::optional<std::uint64_t> seed;
  if (const auto s = scan.optional_integer("seed")) {
    if (*s < 0) scan.fail("seed", "must be >= 0");
    seed = static_cast<std::uint64_t>(*s);
  }
  const double noise_scale = scan.number("noise_scale", 1.0);
  if (!(noise_scale > 0.0)) scan.fail("noise_scale", "must be > 0");
  if (scan.has("noise_scale") && !seed) scan.fail("noise_scale", "requires a seed");

  // integration
  IntegrationParams integration;
  if (root.has("integration")) {
    const auto in = root.object("integration");
    in.allow({"samples_per_cycle", "window_fwhm"});
    if (const auto spc = in.optional_integer("samples_per_cycle")) {
      if (*spc < 16 || *spc > 4096) in.fail("samples_per_cycle", "must be in [16, 4096]");
      integration.samples_per_optical_cycle = static_cast<int>(*spc);
    }
    integration.window_halfwidth = in.number("window_fwhm", integration.window_halfwidth);
    if (!(integration.window_halfwidth >= 4.0 && integration.window_halfwidth <= 100.0)) {
      in.fail("window_fwhm", "must be in [4, 100]");
    }
  }

  try {
    EmissionModel em(multiphoton, tunneling, theta_deg * std::numbers::pi / 180.0, tip, photon);
    if (*axis != ScanAxis::voltage) (void)effective_workfunction(tip.workfunction, em.dc_field());
    ScanSpec spec{*axis, std::move(grid), pair, std::move(em), cal, integration, seed, noise_scale};
    spec.validate();
    return RunConfig{scenario, std::move(spec), output_csv};
  } catch (const std::exception& e) {
    root.fail(nullptr, e.what());
  }
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "<file>", "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), path);
}

}  // namespace fetip
