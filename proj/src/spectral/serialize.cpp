#include "osc/spectral/serialize.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little, "field dumps assume a little-endian host");

namespace osc {
namespace {

constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("truncated field file");
  return v;
}

}  // namespace

void write_field(const std::string& path, const SpectralField& f, bool sidecar) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  const Grid& g = f.grid();
  os.write("OSCF", 4);
  put<std::uint32_t>(os, kVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.dim()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.points()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.components()));
  put<std::uint32_t>(os, f.is_real() ? 1u : 0u);
  put<double>(os, g.length());
  for (const cplx& c : f.data()) {
    put<double>(os, c.real());
    put<double>(os, c.imag());
  }
  if (!os) throw std::runtime_error("write failed: " + path);
  if (!sidecar) return;

  nlohmann::json j;
  j["magic"] = "OSCF";
  j["version"] = kVersion;
  j["dimension"] = g.dim();
  j["points"] = g.points();
  j["components"] = f.components();
  j["real"] = f.is_real();
  j["length"] = g.length();
  auto& coeffs = j["coefficients"] = nlohmann::json::array();
  for (const cplx& c : f.data()) coeffs.push_back({c.real(), c.imag()});
  std::ofstream js(path + ".json");
  js << j.dump(1) << '\n';
}

SpectralField read_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "OSCF", 4) != 0) throw std::runtime_error("not an OSCF file");
  const auto version = get<std::uint32_t>(is);
  if (version != kVersion) throw std::runtime_error("unsupported OSCF version");
  const int d = static_cast<int>(get<std::uint32_t>(is));
  const int n = static_cast<int>(get<std::uint32_t>(is));
  const int m = static_cast<int>(get<std::uint32_t>(is));
  const auto flags = get<std::uint32_t>(is);
  const double length = get<double>(is);
  SpectralField f(make_grid(d, n, length), m, (flags & 1u) != 0);
  for (cplx& c : f.data()) {
    const double re = get<double>(is);
    const double im = get<double>(is);
    c = cplx(re, im);
  }
  return f;
}

}  // namespace osc
