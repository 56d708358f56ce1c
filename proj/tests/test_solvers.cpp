#include <algorithm>
#include <cmath>
#include <numeric>

#include "anivisc/approx.hpp"
#include "anivisc/littlewood_paley.hpp"
#include "anivisc/nsh_solver.hpp"
#include "anivisc/random_fields.hpp"
#include "anivisc/slice_solver.hpp"
#include "anivisc/spectral_ops.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace anivisc;
using namespace testing_util;
using std::cos;
using std::exp;
using std::sin;

namespace {

using Fn = double (*)(double, double, double);

VectorField field3(const Grid& g, Fn f1, Fn f2, Fn f3) {
  return {sample(g, f1), sample(g, f2), sample(g, f3)};
}

double zero_fn(double, double, double) { return 0.0; }

double max_field_diff(const VectorField& a, const VectorField& b) {
  double m = 0.0;
  for (int c = 0; c < 3; ++c) m = std::max(m, max_abs(a[c] - b[c], 1));
  return m;
}

// Taylor-Green horizontal field, x3-independent.
std::array<SpectralField, 2> taylor_green(const Grid& g) {
  return {sample(g, [](double x, double y, double) { return cos(x) * sin(y); }),
          sample(g, [](double x, double y, double) { return -sin(x) * cos(y); })};
}

// Divergence-free slices with genuine y3 dependence, from a stream function.
std::array<SpectralField, 2> layered_slices(const Grid& g, double amp = 1.0) {
  const SpectralField psi = sample(g, [amp](double x, double y, double z) {
    return amp * (sin(x) * sin(y) * cos(z) + 0.5 * cos(2 * x + y) * sin(z) + 0.3 * sin(x - 2 * y));
  });
  return {derivative(psi, 2), -1.0 * derivative(psi, 1)};
}

// Removes xi_h = 0 content with xi3 != 0.
SpectralField admissible_w3(SpectralField f) {
  const Grid& g = f.grid();
  for (int i3 = 1; i3 < g.n_v(); ++i3) f.data()[g.index(0, 0, i3)] = 0.0;
  return f;
}

StepperConfig config(double dt, double t_end, int stride) {
  StepperConfig c;
  c.dt = dt;
  c.t_end = t_end;
  c.snapshot_stride = stride;
  return c;
}

}  // namespace

TEST_SUITE("pde-solvers") {
  TEST_CASE("hallmark modes of horizontal-only viscosity") {
    const Grid g = Grid::make(16, 16);
    const StepperConfig cfg = config(0.01, 1.0, 10);

    SUBCASE("(sin x3, 0, 0) is stationary") {
      const VectorField u0 = field3(g, [](double, double, double z) { return sin(z); }, zero_fn, zero_fn);
      double worst = 0.0;
      run_nsh(u0, cfg, [&](const VelocityState& s, std::size_t) {
        worst = std::max(worst, max_field_diff(s.u, u0));
        CHECK(l2_norm(s.u) == doctest::Approx(l2_norm(u0)).epsilon(1e-10));
      });
      CHECK(worst < 1e-10);
    }
    SUBCASE("(cos x2, 0, 0) decays like e^-t") {
      const VectorField u0 = field3(g, [](double, double y, double) { return cos(y); }, zero_fn, zero_fn);
      std::size_t seen = 0;
      run_nsh(u0, cfg, [&](const VelocityState& s, std::size_t) {
        const VectorField exact{exp(-s.t) * u0[0], u0[1], u0[2]};
        CHECK(max_field_diff(s.u, exact) < 1e-10);
        ++seen;
      });
      CHECK(seen == cfg.snapshot_count());
    }
    SUBCASE("(0, 0, sin x1) diffuses horizontally") {
      const VectorField u0 = field3(g, zero_fn, zero_fn, [](double x, double, double) { return sin(x); });
      run_nsh(u0, cfg, [&](const VelocityState& s, std::size_t) {
        const VectorField exact{u0[0], u0[1], exp(-s.t) * u0[2]};
        CHECK(max_field_diff(s.u, exact) < 1e-10);
      });
    }
    SUBCASE("(0, 0, sin x3) is not divergence-free and is rejected") {
      const VectorField u0 = field3(g, zero_fn, zero_fn, [](double, double, double z) { return sin(z); });
      CHECK(divergence_defect(u0) > 0.5);
      CHECK_THROWS_AS(run_nsh(u0, cfg), std::invalid_argument);
      CHECK(l2_norm(leray_project(u0).u) < 1e-14);
    }
  }

  TEST_CASE("initial data validation") {
    const Grid g = Grid::make(8, 8);
    const VectorField c = field3(g, [](double, double, double) { return 1.0; }, zero_fn, zero_fn);
    CHECK_THROWS_AS(prepare_initial_velocity(c), std::invalid_argument);
    StepperConfig bad = config(0.3, 1.0, 1);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = config(-0.1, 1.0, 1);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    const StepperConfig ok = config(0.25, 1.0, 3);
    CHECK(ok.steps() == 4);
    CHECK(ok.snapshot_count() == 3);  // 0, 3, 4
  }

  TEST_CASE("CFL violation carries a usable dt") {
    const Grid g = Grid::make(16, 16);
    const VectorField u0 = field3(g, [](double, double y, double) { return 100 * cos(y); }, zero_fn, zero_fn);
    StepperConfig cfg = config(0.1, 0.1, 1);
    double advisory = 0.0;
    try {
      step_nsh({u0, 0.0}, cfg);
      FAIL("expected a CFL violation");
    } catch (const CflViolation& e) {
      advisory = e.advisory_dt();
    }
    CHECK(advisory > 0.0);
    CHECK(advisory <= 0.5 * (2 * std::numbers::pi / 16) / 100);
    cfg.dt = advisory;
    CHECK_NOTHROW(step_nsh({u0, 0.0}, cfg));
  }

  TEST_CASE("energy balance and divergence on a resolved 3D run") {
    const Grid g = Grid::make(32, 32);
    VectorField u0;
    for (int c = 0; c < 3; ++c) u0[c] = gaussian_field(g, {0, 3, 0, 3}, 40 + c);
    for (auto& f : u0) f.at(0, 0, 0) = 0.0;
    u0 = leray_project(u0).u;
    double peak = 0.0;
    for (const auto& c : u0) peak = std::max(peak, max_abs(c));
    for (auto& c : u0) c *= 1.0 / peak;
    const StepperConfig cfg = config(0.01, 1.0, 10);
    double max_div = 0.0;
    const NshRunSummary s = run_nsh(u0, cfg, [&](const VelocityState& st, std::size_t) {
      max_div = std::max(max_div, l2_norm(divergence(st.u)));
    });
    CHECK(s.steps == 100);
    const double rel = std::abs(s.final_energy + s.dissipation - s.initial_energy) / s.initial_energy;
    CHECK(rel < 1e-6);
    CHECK(s.dissipation > 0.0);
    CHECK(max_div < 1e-10);
  }

  TEST_CASE("Taylor-Green slice ensemble matches the closed form") {
    const Grid g = Grid::make(32, 4);
    const auto tg = taylor_green(g);
    const StepperConfig cfg = config(1e-3, 0.5, 100);
    const SliceTrajectory tr = solve_ns2d_slices(slices_from_spectral(tg[0], tg[1]), cfg);
    CHECK(tr.snapshots.size() == 6);
    CHECK(tr.snapshots.back().t == doctest::Approx(0.5));
    for (const SliceEnsemble& s : tr.snapshots) {
      const auto u = slices_to_spectral(s);
      const double decay = exp(-2 * s.t);
      CHECK(max_abs(u[0] - decay * tg[0], 1) < 1e-8);
      CHECK(max_abs(u[1] - decay * tg[1], 1) < 1e-8);
    }
  }

  TEST_CASE("zero slices stay zero") {
    const Grid g = Grid::make(16, 8);
    const SliceTrajectory tr = solve_ns2d_slices(slices_from_spectral(SpectralField(g), SpectralField(g)),
                                                 config(0.01, 0.1, 5));
    for (const auto& s : tr.snapshots) {
      CHECK(coeff_max(s.u1) == 0.0);
      CHECK(coeff_max(s.u2) == 0.0);
    }
  }

  TEST_CASE("non-divergence-free slices are rejected") {
    const Grid g = Grid::make(16, 8);
    const SpectralField a = sample(g, [](double x, double, double) { return sin(x); });
    CHECK_THROWS_AS(solve_ns2d_slices(slices_from_spectral(a, SpectralField(g)), config(0.01, 0.1, 1)),
                    std::invalid_argument);
  }

  TEST_CASE("per-slice energy balance") {
    const Grid g = Grid::make(32, 8);
    const auto uh = layered_slices(g, 1.5);
    const StepperConfig cfg = config(0.01, 1.0, 100);
    const SliceTrajectory tr = solve_ns2d_slices(slices_from_spectral(uh[0], uh[1]), cfg);
    const auto e0 = slice_energies(tr.snapshots.front());
    const auto e1 = slice_energies(tr.snapshots.back());
    REQUIRE(tr.dissipation.size() == static_cast<std::size_t>(g.n_v()));
    for (int i3 = 0; i3 < g.n_v(); ++i3) {
      CAPTURE(i3);
      CHECK(std::abs(e1[i3] + 2 * tr.dissipation[i3] - e0[i3]) < 1e-6 * e0[i3]);
    }
    CHECK(slice_divergence_defect(tr.snapshots.back()) < 1e-10);
  }

  TEST_CASE("slice order does not matter, bitwise") {
    const Grid g = Grid::make(16, 8);
    const auto uh = layered_slices(g, 2.0);
    const SliceEnsemble s0 = slices_from_spectral(uh[0], uh[1]);
    const int perm[8] = {5, 2, 7, 0, 3, 6, 1, 4};
    auto permute = [&](const SpectralField& h) {
      SpectralField p(g);
      for (int i1 = 0; i1 < g.n_h(); ++i1)
        for (int i2 = 0; i2 < g.n_h(); ++i2)
          for (int i3 = 0; i3 < g.n_v(); ++i3) p.data()[g.index(i1, i2, i3)] = h.data()[g.index(i1, i2, perm[i3])];
      return p;
    };
    SliceEnsemble sp{permute(s0.u1), permute(s0.u2), 0.0};
    const StepperConfig cfg = config(0.01, 0.5, 50);
    const SliceTrajectory a = solve_ns2d_slices(s0, cfg);
    const SliceTrajectory b = solve_ns2d_slices(sp, cfg);
    const SpectralField pa1 = permute(a.snapshots.back().u1), pa2 = permute(a.snapshots.back().u2);
    CHECK(coeff_max_diff(pa1, b.snapshots.back().u1) == 0.0);
    CHECK(coeff_max_diff(pa2, b.snapshots.back().u2) == 0.0);
  }

  TEST_CASE("w3 transport: pure heat flow when u^h = 0") {
    const Grid g = Grid::make(16, 8);
    const StepperConfig cfg = config(0.01, 1.0, 10);
    const SliceTrajectory tr = solve_ns2d_slices(slices_from_spectral(SpectralField(g), SpectralField(g)), cfg);
    const SpectralField w0 = admissible_w3(gaussian_field(g, {0, 6, 0, 3}, 5));
    const auto w = solve_transport_w3(tr, w0, cfg);
    REQUIRE(w.size() == tr.snapshots.size());
    for (std::size_t k = 0; k < w.size(); ++k)
      CHECK(coeff_max_diff(w[k], heat_h(w0, tr.snapshots[k].t)) < 1e-12 * coeff_max(w0));
  }

  TEST_CASE("w3 transport: x_h-independent data are unchanged") {
    const Grid g = Grid::make(16, 8);
    const auto uh = layered_slices(g);
    const StepperConfig cfg = config(0.01, 0.5, 10);
    const SliceTrajectory tr = solve_ns2d_slices(slices_from_spectral(uh[0], uh[1]), cfg);
    const SpectralField w0 = sample(g, [](double, double, double z) { return 0.7 + cos(z) - sin(3 * z); });
    for (const auto& w : solve_transport_w3(tr, w0, cfg)) CHECK(coeff_max_diff(w, w0) < 1e-14);
  }

  TEST_CASE("w3 transport: L2 nonincreasing and self-convergent") {
    const StepperConfig cfg = config(0.01, 1.0, 1);
    auto run = [&](int n) {
      const Grid g = Grid::make(n, 4);
      const SpectralField u1 = sample(g, [](double, double y, double) { return sin(y); });
      const SpectralField u2 = sample(g, [](double x, double, double) { return -sin(x); });
      const SpectralField w0 = sample(g, [](double x, double y, double z) {
        return cos(x) * cos(y) + sin(2 * x + y) * (1 + 0.5 * cos(z));
      });
      return solve_transport_w3(solve_ns2d_slices(slices_from_spectral(u1, u2), cfg), w0, cfg);
    };
    const auto coarse = run(32);
    for (std::size_t k = 1; k < coarse.size(); ++k)
      CHECK(l2_norm(coarse[k]) <= l2_norm(coarse[k - 1]) * (1 + 1e-10));
    const auto fine = run(64);
    const SpectralField ref = resample(fine.back(), 32, 4);
    CHECK(l2_norm(coarse.back() - ref) < 1e-6);
  }

  TEST_CASE("w3 transport: misaligned trajectories are rejected") {
    const Grid g = Grid::make(16, 4);
    const auto uh = layered_slices(Grid::make(16, 4));
    const StepperConfig cfg = config(0.01, 0.2, 5);
    const SliceTrajectory tr = solve_ns2d_slices(slices_from_spectral(uh[0], uh[1]), cfg);
    const SpectralField w0 = sample(g, [](double x, double, double z) { return cos(x) * sin(z); });
    CHECK_THROWS_AS(solve_transport_w3(tr, w0, config(0.01, 0.2, 4)), std::invalid_argument);
    CHECK_THROWS_AS(solve_transport_w3(tr, w0, config(0.02, 0.2, 5)), std::invalid_argument);
    SliceTrajectory tampered = tr;
    tampered.snapshots[2].u1 *= 1.0001;
    CHECK_THROWS_AS(solve_transport_w3(tampered, w0, cfg), std::invalid_argument);
  }

  TEST_CASE("reconstruct_wh") {
    const Grid g = Grid::make(16, 16);
    const SpectralField w3 = sample(g, [](double x, double, double z) { return sin(x) * sin(z); });
    const auto wh = reconstruct_wh(w3);
    const SpectralField expect = sample(g, [](double x, double, double z) { return cos(x) * cos(z); });
    CHECK(coeff_max_diff(wh[0], expect) < 1e-15);
    CHECK(coeff_max(wh[1]) < 1e-15);

    const SpectralField flat = sample(g, [](double x, double y, double) { return sin(x + 2 * y); });
    const auto wf = reconstruct_wh(flat);
    CHECK(coeff_max(wf[0]) == 0.0);
    CHECK(coeff_max(wf[1]) == 0.0);

    const SpectralField rnd = admissible_w3(dealias(noise_field(g, 12)));
    const VectorField w = transport_field(rnd);
    CHECK(l2_norm(divergence(w)) < 1e-12 * l2_norm(rnd));

    const SpectralField bad = sample(g, [](double, double, double z) { return sin(z); });
    CHECK_THROWS_AS(reconstruct_wh(bad), std::domain_error);
  }

  TEST_CASE("pressures") {
    const Grid g = Grid::make(32, 4);
    const auto tg = taylor_green(g);
    const StepperConfig cfg = config(1e-3, 0.5, 250);
    const SliceTrajectory tr = solve_ns2d_slices(slices_from_spectral(tg[0], tg[1]), cfg);
    for (const SliceEnsemble& s : tr.snapshots) {
      const auto u = slices_to_spectral(s);
      const SpectralField p0 = compute_p0(u[0], u[1]);
      const double decay = exp(-4 * s.t);
      const SpectralField exact = sample(g, [decay](double x, double y, double) {
        return -(cos(2 * x) + cos(2 * y)) / 4 * decay;
      });
      CHECK(max_abs(p0 - exact, 1) < 1e-8);
    }

    const SpectralField z(g);
    CHECK(coeff_max(compute_p0(z, z)) == 0.0);
    const P1Parts p1z = compute_p1(z, z, transport_field(sample(g, [](double x, double, double) { return cos(x); })));
    CHECK(coeff_max(p1z.p1h) == 0.0);
    CHECK(coeff_max(p1z.p13) == 0.0);

    // -Delta_h p0 = sum d_i d_j (u^i u^j)
    const Grid g3 = Grid::make(32, 16);
    const auto uh = layered_slices(g3, 1.3);
    const SpectralField p0 = compute_p0(uh[0], uh[1]);
    SpectralField rhs(g3);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        rhs += derivative(derivative(product(uh[i], uh[j]), i + 1), j + 1);
    const SpectralField lhs = -1.0 * horizontal_laplacian(p0);
    CHECK(coeff_max_diff(lhs, rhs) < 1e-11 * std::max(1.0, coeff_max(rhs)));
    CHECK(horizontal_mean_fraction(p0) == 0.0);
  }

  TEST_CASE("u_app assembly") {
    const Grid unit = Grid::make(16, 16);
    const auto uh = layered_slices(unit);
    const SpectralField w3 = admissible_w3(sample(unit, [](double x, double y, double z) {
      return cos(x) * sin(z) + 0.4 * sin(x + y) * cos(2 * z);
    }));
    const VectorField w = transport_field(w3);
    for (int m : {0, 1, 3}) {
      const VectorField ua = assemble_uapp(uh[0], uh[1], w, m);
      CHECK(ua[0].grid().m() == m);
      CHECK(l2_norm(divergence(ua)) < 1e-11 * l2_norm(ua));
      // pointwise definition: u_app(x) = (u^h + eps w^h, w3)(x_h, eps x3)
      const double eps = std::ldexp(1.0, -m);
      const RealVec a = inverse_transform(ua[2]);
      const RealVec b = inverse_transform(w3);
      const Grid& gs = ua[2].grid();
      CHECK(gs.len_v() == doctest::Approx(unit.len_v() / eps));
      CHECK(max_diff(a, b) < 1e-14);
    }
    // w = 0, x3-independent u^h: trivial extension of the 2D field
    const auto tg = taylor_green(unit);
    const VectorField ua = assemble_uapp(tg[0], tg[1], zeros(unit), 2);
    CHECK(max_diff(inverse_transform(ua[0]), inverse_transform(tg[0])) < 1e-15);
    CHECK(coeff_max(ua[2]) == 0.0);
    const std::vector<std::array<SpectralField, 2>> one{tg};
    CHECK_THROWS_AS(assemble_uapp(one, {}, 1), std::invalid_argument);
  }

  TEST_CASE("forcing F vanishes for flat data without w") {
    const Grid unit = Grid::make(16, 8);
    const auto tg = taylor_green(unit);
    const ApproxProfiles p = make_profiles(tg[0], tg[1], SpectralField(unit));
    const VectorField f = compute_forcing_F(p.u1, p.u2, p.w, p.p, 2);
    for (const auto& c : f) CHECK(coeff_max(c) < 1e-15);
    const VectorField mres = wh_momentum_residual(p.u1, p.u2, p.w, p.p);
    for (const auto& c : mres) CHECK(coeff_max(c) < 1e-15);
  }

  TEST_CASE("eps F halves per unit of m at fixed profiles") {
    const Grid unit = Grid::make(16, 16);
    const auto uh = layered_slices(unit);
    const SpectralField w3 = admissible_w3(sample(unit, [](double x, double, double z) { return cos(x) * sin(z); }));
    const ApproxProfiles p = make_profiles(uh[0], uh[1], w3);
    const lp::BesovSpec spec{0.0, 0.5, lp::BesovKind::vertical};
    double prev = 0.0;
    for (int m = 1; m <= 5; ++m) {
      const double eps = std::ldexp(1.0, -m);
      const VectorField f = compute_forcing_F(p.u1, p.u2, p.w, p.p, m);
      const VectorField back{pull_back(eps * f[0]), pull_back(eps * f[1]), pull_back(eps * f[2])};
      const double n = lp::besov_norm(back, spec);
      CHECK(n > 0.0);
      if (prev > 0.0) {
        CAPTURE(m);
        CHECK(n / prev == doctest::Approx(0.5).epsilon(0.2));
      }
      prev = n;
    }
  }

  // Plug-in residual of u_app in (NS)_h: with the discrete profiles, P of
  //   d_t u_app + P div(u_app (x) u_app) - Delta_h u_app - eps F - eps [(M, 0)]_eps
  // vanishes up to time-differencing and spatial truncation.
  TEST_CASE("u_app satisfies the (NS)_h residual identity") {
    const Grid unit = Grid::make(32, 16);
    const StepperConfig cfg = config(1e-3, 0.01, 1);
    auto run_residual = [&](const std::array<SpectralField, 2>& uh0, const SpectralField& w30, int m) {
      const SliceTrajectory tr = solve_ns2d_slices(slices_from_spectral(uh0[0], uh0[1]), cfg);
      const auto w3 = solve_transport_w3(tr, w30, cfg);
      const std::size_t k = 5;
      const double eps = std::ldexp(1.0, -m);
      std::vector<VectorField> ua;
      for (std::size_t j = k - 2; j <= k + 2; ++j) {
        const auto u = slices_to_spectral(tr.snapshots[j]);
        ua.push_back(assemble_uapp(u[0], u[1], transport_field(w3[j]), m));
      }
      const auto u = slices_to_spectral(tr.snapshots[k]);
      const ApproxProfiles p = make_profiles(u[0], u[1], w3[k]);
      const VectorField f = compute_forcing_F(p.u1, p.u2, p.w, p.p, m);
      const VectorField mres = wh_momentum_residual(p.u1, p.u2, p.w, p.p);
      VectorField r = zeros(ua[2][0].grid());
      double scale = 0.0;
      for (int c = 0; c < 3; ++c) {
        SpectralField dt = (1.0 / (12 * cfg.dt)) * (ua[0][c] - 8.0 * ua[1][c] + 8.0 * ua[3][c] - ua[4][c]);
        scale = std::max(scale, coeff_max(dt));
        r[c] = dt + advect(ua[2], ua[2][c]) - horizontal_laplacian(ua[2][c]) - eps * f[c];
        if (c < 2) r[c] -= eps * slowly_varying_embed(mres[c], m);
      }
      leray_project_inplace(r);
      double worst = 0.0;
      for (const auto& c : r) worst = std::max(worst, max_abs(c, 1));
      return std::pair{worst, scale};
    };

    SUBCASE("layered u^h and admissible w3") {
      const auto uh = layered_slices(unit);
      const SpectralField w3 = admissible_w3(sample(unit, [](double x, double y, double z) {
        return 0.5 * cos(x) * sin(z) + 0.2 * sin(x + y) * cos(z);
      }));
      for (int m : {1, 2}) {
        const auto [res, scale] = run_residual(uh, w3, m);
        CAPTURE(m);
        CHECK(scale > 0.1);
        CHECK(res < 1e-6);
      }
    }
    SUBCASE("u^h = 0: the pure F identity") {
      const SpectralField w3 = admissible_w3(sample(unit, [](double x, double y, double z) {
        return cos(x) * sin(z) + 0.3 * sin(2 * y) * cos(z);
      }));
      const ApproxProfiles p = make_profiles(SpectralField(unit), SpectralField(unit), w3);
      for (const auto& c : wh_momentum_residual(p.u1, p.u2, p.w, p.p)) CHECK(coeff_max(c) < 1e-14);
      const auto [res, scale] = run_residual({SpectralField(unit), SpectralField(unit)}, w3, 1);
      CHECK(scale > 0.1);
      CHECK(res < 1e-6);
    }
  }
}
