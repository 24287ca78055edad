#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace osc {

// Invalid run parameters (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A monitor exceeded the blow-up guard (CLI exit code 3). diagnostics holds a
// JSON dump of the offending iterate's monitors.
struct DivergenceError : std::runtime_error {
  explicit DivergenceError(const std::string& what, std::string diag = {})
      : std::runtime_error(what), diagnostics(std::move(diag)) {}
  std::string diagnostics;
};

}  // namespace osc
