#include "anivisc/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace anivisc {
namespace {

constexpr char kMagic[4] = {'A', 'N', 'S', 'H'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

template <class T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw std::runtime_error("truncated checkpoint");
  return v;
}

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const VelocityState& state) {
  const Grid& g = state.u[0].grid();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(kMagic, 4);
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n_h()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n_v()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.m()));
  put<double>(out, state.t);
  for (const SpectralField& c : state.u) {
    if (!(c.grid() == g)) throw std::invalid_argument("components on different grids");
    out.write(reinterpret_cast<const char*>(c.data()),
              static_cast<std::streamsize>(c.size() * sizeof(Complex)));
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

VelocityState read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) throw std::runtime_error("not an ANSH checkpoint");
  const auto version = get<std::uint32_t>(in);
  if (version != kVersion) throw std::runtime_error("unsupported checkpoint version");
  const auto n_h = get<std::uint32_t>(in);
  const auto n_v = get<std::uint32_t>(in);
  const auto m = get<std::uint32_t>(in);
  const double t = get<double>(in);
  const Grid g = Grid::make(static_cast<int>(n_h), static_cast<int>(n_v), static_cast<int>(m));
  VelocityState s{zeros(g), t};
  for (SpectralField& c : s.u) {
    in.read(reinterpret_cast<char*>(c.data()),
            static_cast<std::streamsize>(c.size() * sizeof(Complex)));
    if (!in) throw std::runtime_error("truncated checkpoint");
  }
  return s;
}

}  // namespace anivisc
