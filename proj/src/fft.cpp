#include "anivisc/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace anivisc::fft {
namespace {

enum class Kind { full, horizontal, vertical };

using Key = std::tuple<int, int, int, int>;

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// FFTW planning is not thread safe; execution of a finished plan on new
// arrays is. Plans are created once per shape and kept for the process.
fftw_plan plan_for(Kind kind, const Grid& g, Dir dir) {
  static std::map<Key, fftw_plan> cache;
  const int sign = dir == Dir::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  const Key key{static_cast<int>(kind), g.n_h(), g.n_v(), sign};
  std::lock_guard lock(planner_mutex());
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  ComplexVec scratch(g.size());
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan p = nullptr;
  const unsigned flags = FFTW_ESTIMATE;
  switch (kind) {
    case Kind::full:
      p = fftw_plan_dft_3d(g.n_h(), g.n_h(), g.n_v(), buf, buf, sign, flags);
      break;
    case Kind::horizontal: {
      const int n[2] = {g.n_h(), g.n_h()};
      p = fftw_plan_many_dft(2, n, g.n_v(), buf, nullptr, g.n_v(), 1, buf, nullptr, g.n_v(), 1,
                             sign, flags);
      break;
    }
    case Kind::vertical: {
      const int n[1] = {g.n_v()};
      p = fftw_plan_many_dft(1, n, static_cast<int>(g.lines()), buf, nullptr, 1, g.n_v(), buf,
                             nullptr, 1, g.n_v(), sign, flags);
      break;
    }
  }
  if (!p) throw std::runtime_error("FFTW plan creation failed");
  cache.emplace(key, p);
  return p;
}

void run(Kind kind, Complex* data, const Grid& g, Dir dir) {
  fftw_plan p = plan_for(kind, g, dir);
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, buf, buf);
}

}  // namespace

void transform3d(Complex* data, const Grid& grid, Dir dir) { run(Kind::full, data, grid, dir); }
void transform_h(Complex* data, const Grid& grid, Dir dir) { run(Kind::horizontal, data, grid, dir); }
void transform_v(Complex* data, const Grid& grid, Dir dir) { run(Kind::vertical, data, grid, dir); }

}  // namespace anivisc::fft
