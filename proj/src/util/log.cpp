#include "osc/util/log.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>

#include <cstdlib>

namespace osc {

spdlog::logger& log() {
  static std::shared_ptr<spdlog::logger> logger = [] {
    auto l = spdlog::stderr_color_mt("osc");
    l->set_level(spdlog::level::warn);
    if (const char* env = std::getenv("OSC_LOG")) l->set_level(spdlog::level::from_str(env));
    l->set_pattern("[%l] %v");
    return l;
  }();
  return *logger;
}

}  // namespace osc
