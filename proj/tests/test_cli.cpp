#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "osc/cli/commands.hpp"
#include "osc/cli/config.hpp"
#include "osc/cli/run_dir.hpp"
#include "osc/errors.hpp"

using namespace osc;
using namespace osc::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

// Runs the CLI in-process with stdout captured.
Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "osc");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream captured;
  auto* old = std::cout.rdbuf(captured.rdbuf());
  const int code = run(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old);
  return {code, captured.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("osc_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string write_config(const fs::path& dir, const nlohmann::json& j) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << j.dump(2);
  return p.string();
}

nlohmann::json small_run() {
  return {{"mode", "velocity"},
          {"dim", 2},
          {"points", 16},
          {"T", 0.1},
          {"snapshots", 8},
          {"alpha", {0.0, 0.0}},
          {"C", 4.0},
          {"initial", {{"kind", "taylor_green"}, {"amplitude", 1e-3}}},
          {"probe", {{"radius_times", {0.05}}, {"domain_scales", {0.25}}}}};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<double> fields(const std::string& line) {
  std::vector<double> out;
  std::istringstream in(line);
  for (std::string c; std::getline(in, c, ',');) out.push_back(std::stod(c));
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("fnv1a known vectors") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
  CHECK(hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("presets parse") {
  const auto names = preset_names();
  CHECK(names.size() >= 4);
  for (const auto& n : names) {
    CAPTURE(n);
    CHECK_NOTHROW(load_run_config(n));
  }
  CHECK_THROWS_AS(load_run_config("no-such-preset"), ConfigError);
}

TEST_CASE("invalid configs raise ConfigError") {
  auto bad = [](nlohmann::json patch) {
    nlohmann::json j = small_run();
    j.merge_patch(patch);
    return j;
  };
  CHECK_NOTHROW(parse_run_config(small_run()));
  CHECK_THROWS_AS(parse_run_config(bad({{"unknown_key", 1}})), ConfigError);
  CHECK_THROWS_AS(parse_run_config(bad({{"points", 15}})), ConfigError);
  CHECK_THROWS_AS(parse_run_config(bad({{"T", -1.0}})), ConfigError);
  CHECK_THROWS_AS(parse_run_config(bad({{"mode", "vorticity"}, {"dim", 3}, {"alpha", {0, 0, 0}}, {"p", 3.0}})),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config(bad({{"alpha", {0.0, 0.0, 0.1}}})), ConfigError);
}

TEST_CASE("config errors exit with code 2") {
  const fs::path dir = scratch("cfg");
  nlohmann::json j = small_run();
  j["alpha"] = {1.0, 0.0};  // far above the shift bound
  CHECK(invoke({"run-nse", write_config(dir, j), "-o", (dir / "out").string()}).code == kExitConfig);
  CHECK(invoke({"run-nse", (dir / "missing.json").string()}).code == kExitConfig);
  CHECK(invoke({"table", "nonsense"}).code == kExitConfig);
  CHECK(invoke({"no-such-command"}).code == kExitConfig);
  CHECK(invoke({"verify", "--lemma", "no-such-lemma", "-o", (dir / "v").string()}).code == kExitConfig);

  std::ofstream(dir / "bad.json") << "{ not json";
  CHECK(invoke({"verify", "--lemma", "embeddings", "--calibration", (dir / "bad.json").string(), "-o",
                (dir / "v2").string()})
            .code == kExitConfig);
  fs::remove_all(dir);
}

TEST_CASE("weights table") {
  const Result r = invoke({"table", "weights", "--points", "16"});
  REQUIRE(r.code == kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 17);
  for (const auto& l : ls) CHECK(std::count(l.begin(), l.end(), ',') == 9);
}

TEST_CASE("horizon table decreases with the data size") {
  const Result r = invoke({"table", "horizons", "--norms", "0.5,1,2,4", "--C", "4.591"});
  REQUIRE(r.code == kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 5);
  std::vector<double> tstar;
  for (std::size_t i = 1; i < ls.size(); ++i) tstar.push_back(fields(ls[i]).at(1));
  for (std::size_t i = 0; i + 1 < tstar.size(); ++i) CHECK(tstar[i + 1] < tstar[i]);
}

TEST_CASE("run writes a manifest and outputs") {
  const fs::path dir = scratch("run");
  const fs::path out = dir / "out";
  const Result r = invoke({"run-nse", write_config(dir, small_run()), "-o", out.string()});
  REQUIRE(r.code == kExitOk);
  for (const char* f : {"manifest.json", "config.json", "report.json", "monitors.csv", "residuals.csv", "radius.csv",
                        "domain_norms.csv"}) {
    CAPTURE(f);
    CHECK(fs::exists(out / f));
  }
  nlohmann::json m;
  std::ifstream(out / "manifest.json") >> m;
  CHECK(m.at("status") == "converged");
  CHECK(m.at("config_hash").get<std::string>().size() == 16);
  nlohmann::json resolved;
  std::ifstream(out / "config.json") >> resolved;
  CHECK(resolved.at("points") == 16);
  CHECK(m.at("warnings").empty());
  nlohmann::json rep;
  std::ifstream(out / "report.json") >> rep;
  CHECK(rep.at("within_horizon").get<bool>());
  fs::remove_all(dir);
}

TEST_CASE("beyond-horizon runs carry a warning") {
  const fs::path dir = scratch("horizon");
  const fs::path out = dir / "out";
  nlohmann::json j = small_run();
  j["initial"]["amplitude"] = 20.0;
  j["T"] = 0.2;
  j["max_iterations"] = 2;
  j["probe"]["radius_times"] = {0.1};
  const Result r = invoke({"run-nse", write_config(dir, j), "-o", out.string()});
  CHECK((r.code == kExitOk || r.code == kExitDivergence));
  nlohmann::json m;
  std::ifstream(out / "manifest.json") >> m;
  CHECK(m.at("warnings").contains("beyond_horizon"));
  fs::remove_all(dir);
}

}  // TEST_SUITE
