#pragma once

#include <spdlog/spdlog.h>

namespace osc {

// Shared logger writing to stderr. Level defaults to warn; OSC_LOG overrides
// it with any spdlog level name (trace, debug, info, warn, error, off).
spdlog::logger& log();

}  // namespace osc
