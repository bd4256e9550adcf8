#ifndef FETIP_CONFIG_HPP
#define FETIP_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "fetip/scans.hpp"

namespace fetip {

/// Validation failure in a run configuration. `what()` is "<source>:<line>: <path>: <message>".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& path,
              const std::string& message);

  int line() const { return line_; }
  const std::string& path() const { return path_; }

 private:
  int line_;
  std::string path_;
};

/// Parsed and validated run configuration: one scan plus where to write it.
struct RunConfig {
  std::string scenario;
  ScanSpec scan;
  std::optional<std::string> output_csv;
};

/// Parses JSON text against the fixed schema. Unknown keys and out-of-range physical values
/// are rejected with a ConfigError anchored to the offending line.
RunConfig parse_run_config(const std::string& text, const std::string& source = "<config>");

RunConfig load_run_config(const std::string& path);

}  // namespace fetip

#endif
