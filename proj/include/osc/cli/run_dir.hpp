#pragma once

#include <chrono>
#include <cstdint>
#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

namespace osc::cli {

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view data);
std::string hex64(std::uint64_t v);
// Peak resident set size of this process in KiB.
long peak_rss_kb();

// Output directory with one manifest.json, rewritten on every update.
class RunDirectory {
 public:
  RunDirectory(std::string root, std::string command, const nlohmann::json& resolved_config);

  const std::string& root() const { return root_; }
  std::string path(const std::string& name) const;

  void add_input(const std::string& path);
  void set_calibration(const std::string& path);
  void warn(const std::string& flag, const std::string& message);
  // Writes text exactly as given.
  void write(const std::string& name, const std::string& text) const;
  void write_json(const std::string& name, const nlohmann::json& j) const;
  // Records status, wall time and peak memory and rewrites the manifest.
  void finish(const std::string& status);

  const nlohmann::json& manifest() const { return manifest_; }

 private:
  void flush() const;

  std::string root_;
  nlohmann::json manifest_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace osc::cli
