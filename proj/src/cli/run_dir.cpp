#include "osc/cli/run_dir.hpp"

#include <sys/resource.h>

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "osc/errors.hpp"

namespace osc::cli {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

long peak_rss_kb() {
  rusage u{};
  getrusage(RUSAGE_SELF, &u);
  return u.ru_maxrss;
}

RunDirectory::RunDirectory(std::string root, std::string command, const nlohmann::json& resolved_config)
    : root_(std::move(root)), start_(std::chrono::steady_clock::now()) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) throw ConfigError("cannot create output directory " + root_ + ": " + ec.message());
  const std::string dump = resolved_config.dump();
  manifest_ = {{"command", command},
               {"config_hash", hex64(fnv1a(dump))},
               {"inputs", nlohmann::json::array()},
               {"output", root_},
               {"calibration", nullptr},
               {"started", utc_now()},
               {"status", "running"},
               {"warnings", nlohmann::json::object()}};
  write("config.json", resolved_config.dump(2) + "\n");
  flush();
}

std::string RunDirectory::path(const std::string& name) const { return (std::filesystem::path(root_) / name).string(); }

void RunDirectory::add_input(const std::string& p) {
  manifest_["inputs"].push_back({{"path", p}, {"hash", hex64(fnv1a(read_file(p)))}});
  flush();
}

void RunDirectory::set_calibration(const std::string& p) {
  manifest_["calibration"] = {{"path", p}, {"hash", hex64(fnv1a(read_file(p)))}};
  flush();
}

void RunDirectory::warn(const std::string& flag, const std::string& message) {
  manifest_["warnings"][flag] = message;
  flush();
}

void RunDirectory::write(const std::string& name, const std::string& text) const {
  const auto p = std::filesystem::path(root_) / name;
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + p.string());
  out << text;
}

void RunDirectory::write_json(const std::string& name, const nlohmann::json& j) const { write(name, j.dump(2) + "\n"); }

void RunDirectory::finish(const std::string& status) {
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  manifest_["status"] = status;
  manifest_["wall_seconds"] = wall;
  manifest_["peak_rss_kb"] = peak_rss_kb();
  flush();
}

void RunDirectory::flush() const { write_json("manifest.json", manifest_); }

}  // namespace osc::cli
