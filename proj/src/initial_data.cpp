#include "anivisc/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "anivisc/approx.hpp"
#include "anivisc/littlewood_paley.hpp"
#include "anivisc/nsh_solver.hpp"
#include "anivisc/random_fields.hpp"
#include "anivisc/spectral_ops.hpp"

namespace anivisc {
namespace {

SpectralField from_modes(const Grid& g, const std::vector<ModeCoeff>& modes) {
  SpectralField f(g);
  for (const auto& c : modes) {
    if (std::abs(c.k1) >= g.n_h() / 2 || std::abs(c.k2) >= g.n_h() / 2 || std::abs(c.k3) >= g.n_v() / 2)
      throw std::invalid_argument("mode (" + std::to_string(c.k1) + "," + std::to_string(c.k2) + "," +
                                  std::to_string(c.k3) + ") is not resolved by the grid");
    f.mode(c.k1, c.k2, c.k3) += Complex(c.re, c.im);
    if (c.k1 != 0 || c.k2 != 0 || c.k3 != 0) {
      f.mode(-c.k1, -c.k2, -c.k3) += Complex(c.re, -c.im);
    } else {
      f.mode(0, 0, 0) = f.mode(0, 0, 0).real();
    }
  }
  return f;
}

std::array<SpectralField, 2> curl_h(const SpectralField& psi) {
  return {derivative(psi, 2), -1.0 * derivative(psi, 1)};
}

}  // namespace

double spectral_tail(const SpectralField& f) {
  const Grid& g = f.grid();
  double all = 0.0, tail = 0.0;
  for (int i1 = 0; i1 < g.n_h(); ++i1)
    for (int i2 = 0; i2 < g.n_h(); ++i2)
      for (int i3 = 0; i3 < g.n_v(); ++i3) {
        const double e = std::norm(f.at(i1, i2, i3));
        all += e;
        if (3 * std::abs(g.k_h(i1)) > g.n_h() / 2 || 3 * std::abs(g.k_h(i2)) > g.n_h() / 2 ||
            3 * std::abs(g.k_v(i3)) > g.n_v() / 2)
          tail += e;
      }
  return all > 0.0 ? std::sqrt(tail / all) : 0.0;
}

Profiles build_profiles(const InitialDataSpec& spec, const Grid& unit, double tail_limit) {
  if (unit.m() != 0) throw std::invalid_argument("profiles live on the unit-period grid (m = 0)");
  const double a = spec.amplitude;
  Profiles p{SpectralField(unit), SpectralField(unit), SpectralField(unit)};

  if (spec.u0h == "layered") {
    const auto u = curl_h(sample(unit, [](double x, double y, double z) { return std::sin(x) * std::sin(y) * std::cos(z); }));
    p.u1 = a * u[0];
    p.u2 = a * u[1];
  } else if (spec.u0h == "tg-flat") {
    p.u1 = sample(unit, [a](double x, double y, double) { return a * std::cos(x) * std::sin(y); });
    p.u2 = sample(unit, [a](double x, double y, double) { return -a * std::sin(x) * std::cos(y); });
  } else if (spec.u0h == "random") {
    const auto u = curl_h(gaussian_field(unit, {1.0, 3.0, 0.0, 2.0}, spec.seed));
    const double peak = std::max(max_abs(u[0]), max_abs(u[1]));
    p.u1 = (a / peak) * u[0];
    p.u2 = (a / peak) * u[1];
  } else if (spec.u0h == "modes") {
    const auto u = curl_h(from_modes(unit, spec.u0h_modes));
    p.u1 = a * u[0];
    p.u2 = a * u[1];
  } else if (spec.u0h != "zero") {
    throw std::invalid_argument("unknown u0h profile '" + spec.u0h + "'");
  }

  const double b = spec.w_amplitude;
  if (spec.w0_3 == "default") {
    p.w3 = sample(unit, [b](double x, double, double z) { return b * std::cos(x) * std::sin(z); });
  } else if (spec.w0_3 == "random") {
    SpectralField w = gaussian_field(unit, {1.0, 3.0, 0.0, 2.0}, spec.seed + 7919);
    p.w3 = (b / max_abs(w)) * w;
  } else if (spec.w0_3 == "modes") {
    p.w3 = b * from_modes(unit, spec.w0_3_modes);
  } else if (spec.w0_3 != "zero") {
    throw std::invalid_argument("unknown w0_3 profile '" + spec.w0_3 + "'");
  }

  for (const SpectralField* f : {&p.u1, &p.u2, &p.w3})
    if (spectral_tail(*f) > tail_limit)
      throw std::invalid_argument("initial profile is not resolved: spectral tail above limit");
  const VectorField uh{p.u1, p.u2, SpectralField(unit)};
  if (divergence_defect(uh) > 1e-8) throw std::invalid_argument("u0h is not divergence-free");
  reconstruct_wh(p.w3);  // throws for inadmissible w0_3
  return p;
}

VectorField build_initial_data(const Profiles& p, int m) {
  return assemble_uapp(p.u1, p.u2, transport_field(p.w3), m);
}

ProfileNorms profile_norms(const Profiles& p) {
  const VectorField v{p.u1, p.u2, p.w3};
  return {lp::besov_norm(v, {0.0, 0.5, lp::BesovKind::anisotropic}),
          lp::besov_norm(v, {-1.0, 2.5, lp::BesovKind::anisotropic})};
}

double largeness_proxy(const VectorField& u0, std::size_t n_times) {
  const auto ts = lp::geometric_times(1e-3, 1e2, n_times);
  double out = 0.0;
  for (const auto& c : u0) out = std::max(out, lp::heat_flow_norm(c, -1.0, INFINITY, INFINITY, ts));
  return out;
}

}  // namespace anivisc
