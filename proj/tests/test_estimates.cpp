#include <cmath>
#include <numbers>
#include <stdexcept>

#include "anivisc/estimates.hpp"
#include "anivisc/lab.hpp"
#include "anivisc/random_fields.hpp"
#include "anivisc/spectral_ops.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace anivisc;
using namespace anivisc::est;
using namespace testing_util;
using std::cos;
using std::sin;
using std::numbers::pi;

namespace {

SpectralField field(const Grid& g, double (*fn)(double, double, double)) { return sample(g, fn); }

SpectralField vmode(const Grid& g, int k) {
  return sample(g, [k](double, double, double z) { return sin(k * z); });
}

SpectralField hmode(const Grid& g, int k) {
  return sample(g, [k](double x, double, double) { return sin(k * x); });
}

// Shear flow (cos x2 sin 4x3, 0, 0): divergence free, Delta_h R = -R, R.grad R = 0.
VectorField shear(const Grid& g, double a) {
  return {a * sample(g, [](double, double y, double z) { return cos(y) * sin(4 * z); }), SpectralField(g),
          SpectralField(g)};
}

}  // namespace

TEST_SUITE("estimate-lab") {
  TEST_CASE("ratio report bookkeeping") {
    RatioReport r{"demo", "g", {}, 0};
    r.add(0, 1, 1.0, 2.0);
    r.add(1, 2, 3.0, 1.0);
    r.add(1, 3, 0.0, 0.0);
    CHECK(r.samples.size() == 2);
    CHECK(r.filtered == 1);
    CHECK(r.max_ratio() == 3.0);
    CHECK(r.spread() == 6.0);
    CHECK_THROWS_AS(r.add(2, 4, 1.0, 0.0), std::domain_error);
    RatioReport empty;
    CHECK(empty.spread() == 0.0);
    CHECK(describe(Grid::make(32, 16, 2)) == "32x32x16, m=2");
  }

  TEST_CASE("mixed norms of closed-form fields") {
    const Grid g = Grid::make(8, 16);
    const SpectralField s3 = vmode(g, 1);
    // L^2_h L^inf_v of sin x3: the sup is 1 on every vertical line
    CHECK(mixed_norm(s3, lp::Axis::vertical, INFINITY, 2.0) == doctest::Approx(2 * pi).epsilon(1e-12));
    CHECK(mixed_norm(s3, lp::Axis::vertical, 2.0, 2.0) ==
          doctest::Approx(2 * pi * std::sqrt(pi)).epsilon(1e-13));
    const SpectralField s1 = hmode(g, 1);
    CHECK(mixed_norm(s1, lp::Axis::horizontal, INFINITY, 2.0) ==
          doctest::Approx(std::sqrt(2 * pi)).epsilon(1e-12));
    // int sin^4 over the horizontal torus = 2 pi * 3 pi / 4
    const double l4 = std::pow(1.5 * pi * pi, 0.25);
    CHECK(mixed_norm(s1, lp::Axis::horizontal, 4.0, 2.0) ==
          doctest::Approx(l4 * std::sqrt(2 * pi)).epsilon(1e-12));
  }

  TEST_CASE("vertical Bernstein on pure modes") {
    const Grid g = Grid::make(8, 64);
    for (int q = 0; q <= 4; ++q) {
      const SpectralField a = vmode(g, 1 << q);
      const RatioReport d = check_bernstein_vertical({a}, q, 1, 2.0, 2.0);
      CHECK(d.max_ratio() == doctest::Approx(1.0).epsilon(1e-12));
      // ||a||_{L^2_h L^inf_v} / (2^{q/2} ||a||_{L^2_h L^2_v}) = 1 / sqrt(pi 2^q)
      const RatioReport s = check_bernstein_vertical({a}, q, 0, INFINITY, 2.0);
      CHECK(s.max_ratio() == doctest::Approx(1.0 / std::sqrt(pi * std::exp2(q))).epsilon(1e-10));
    }
    const SpectralField c = sample(g, [](double, double, double) { return 2.0; });
    const RatioReport z = check_bernstein_vertical({c}, 0, 1, 2.0, 2.0);
    REQUIRE(z.samples.size() == 1);
    CHECK(z.max_ratio() == 0.0);
  }

  TEST_CASE("inverse Bernstein: ratio 1 at the inner edge, 1/2 at the outer edge") {
    const Grid g = Grid::make(8, 64);
    for (int q = 0; q <= 3; ++q) {
      for (double p : {2.0, double(INFINITY)}) {
        CHECK(check_inverse_bernstein({vmode(g, 1 << q)}, q, p).max_ratio() ==
              doctest::Approx(1.0).epsilon(1e-10));
        CHECK(check_inverse_bernstein({vmode(g, 2 << q)}, q, p).max_ratio() ==
              doctest::Approx(0.5).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("horizontal Bernstein: ratio times 2^j is constant for sin(2^j x1)") {
    const Grid g = Grid::make(64, 8);
    for (int j = 0; j <= 4; ++j) {
      const RatioReport r = check_bernstein_horizontal({hmode(g, 1 << j)}, j, INFINITY, 2.0);
      CHECK(r.max_ratio() * std::exp2(j) == doctest::Approx(1.0 / (pi * std::sqrt(2.0))).epsilon(1e-10));
    }
  }

  TEST_CASE("Bernstein input validation") {
    const Grid g = Grid::make(8, 32);
    CHECK_THROWS_AS(check_bernstein_vertical({vmode(g, 3)}, 1, 0, 2.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(check_bernstein_vertical({SpectralField(g)}, 1, 0, 2.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(check_bernstein_vertical({vmode(g, 1)}, 1, 0, 2.0, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(check_inverse_bernstein({vmode(g, 1)}, 1), std::invalid_argument);
    CHECK_THROWS_AS(check_inverse_bernstein({vmode(g, 8)}, 1), std::invalid_argument);
    CHECK_THROWS_AS(check_bernstein_horizontal({hmode(g, 3)}, 1, INFINITY, 2.0), std::invalid_argument);
  }

  TEST_CASE("ratios are homogeneous of degree zero") {
    const Grid g = Grid::make(16, 32);
    const auto s = vertical_band_samples(g, 0.0, 4.0, 3, 11);
    for (const auto& a : s) {
      const double r1 = check_bernstein_vertical({a}, 2, 1, INFINITY, 2.0).max_ratio();
      const double r2 = check_bernstein_vertical({-7.5 * a}, 2, 1, INFINITY, 2.0).max_ratio();
      CHECK(r2 == doctest::Approx(r1).epsilon(1e-13));
      const double e1 = check_estimate11({a}, 0.5).max_ratio();
      const double e2 = check_estimate11({3.0 * a}, 0.5).max_ratio();
      CHECK(e2 == doctest::Approx(e1).epsilon(1e-13));
    }
  }

  TEST_CASE("band samples do not depend on the grid") {
    const auto a = vertical_band_samples(Grid::make(16, 16), 0.0, 4.0, 2, 5);
    const auto b = vertical_band_samples(Grid::make(16, 64), 0.0, 4.0, 2, 5);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(coeff_max_diff(resample(a[i], 16, 64), b[i]) == 0.0);
    const auto h = horizontal_band_samples(Grid::make(32, 8), 2.0, 4.0, 1, 9);
    const auto h64 = horizontal_band_samples(Grid::make(64, 8), 2.0, 4.0, 1, 9);
    CHECK(coeff_max_diff(resample(h[0], 64, 8), h64[0]) == 0.0);
  }

  TEST_CASE("estimate11 on a single (j, q) block") {
    const Grid g = Grid::make(32, 32);
    // |xi_h| = 8 (j = 2), |xi3| = 4 (q = 1)
    const SpectralField a = field(g, [](double x, double, double z) { return sin(8 * x) * sin(4 * z); });
    const double na = std::pow(2 * pi, 1.5) / 2;
    // lhs = 2^{1/2} (8 ||a|| + sqrt(pi)), rhs = 2^{5/2} ||a||
    const double expect = 2.0 + std::sqrt(pi) / (4 * na);
    CHECK(check_estimate11({a}, 0.5).max_ratio() == doctest::Approx(expect).epsilon(1e-11));
    const RatioReport z = check_estimate11({SpectralField(g)}, 0.5);
    CHECK(z.samples.empty());
    CHECK(z.filtered == 1);
  }

  TEST_CASE("product laws with a constant factor") {
    const Grid g = Grid::make(32, 32);
    const SpectralField a = field(g, [](double x, double, double z) { return sin(8 * x) * sin(4 * z); });
    const SpectralField one = sample(g, [](double, double, double) { return 1.0; });
    const auto r = check_product_laws({{a, one}}, 0.5);
    REQUIRE(r.size() == 3);
    const double vol = std::pow(2 * pi, 1.5);  // ||1||_{L^2}, the mean mode has weight 1
    CHECK(r[0].max_ratio() == doctest::Approx(1.0 / vol).epsilon(1e-11));
    CHECK(r[1].max_ratio() == doctest::Approx(1.0 / (2 * vol)).epsilon(1e-11));
    CHECK(r[2].max_ratio() == doctest::Approx(1.0 / (4 * vol)).epsilon(1e-11));
    CHECK_THROWS_AS(check_product_laws({{a, one}}, 0.25), std::invalid_argument);
  }

  TEST_CASE("symmetric product laws do not care about the order") {
    const Grid g = Grid::make(16, 16);
    const SpectralField a = gaussian_field(g, {0.0, 3.0, 0.0, 2.0}, 1);
    const SpectralField b = gaussian_field(g, {0.0, 3.0, 0.0, 2.0}, 2);
    const auto ab = check_product_laws({{a, b}}, 0.5);
    const auto ba = check_product_laws({{b, a}}, 0.5);
    CHECK(ab[0].max_ratio() == doctest::Approx(ba[0].max_ratio()).epsilon(1e-12));
    CHECK(ab[1].max_ratio() == doctest::Approx(ba[1].max_ratio()).epsilon(1e-12));
    // padded product is exact: compare with a pointwise product on a 4x grid
    const SpectralField p = padded_product(a, b);
    const SpectralField q = product(resample(a, 64, 64), resample(b, 64, 64), false);
    CHECK(coeff_max_diff(resample(p, 64, 64), q) < 1e-13);
  }

  TEST_CASE("block energy balance: zero remainder") {
    const Grid g = Grid::make(8, 32);
    RemainderTrajectory t;
    for (int k = 0; k <= 4; ++k) {
      t.times.push_back(0.1 * k);
      t.r.push_back(zeros(g));
      t.uapp.push_back(shear(g, 1.0));
      t.forcing.push_back(zeros(g));
    }
    const BlockEnergyTerms e = check_block_energy_balance(t, 1, 0, 4);
    CHECK(e.residual == 0.0);
    CHECK(e.relative == 0.0);
    CHECK_THROWS_AS(check_block_energy_balance(t, 99, 0, 4), std::out_of_range);
    CHECK_THROWS_AS(check_block_energy_balance(t, 1, 3, 3), std::invalid_argument);
  }

  TEST_CASE("block energy balance: heat decay and a forced linear profile") {
    const Grid g = Grid::make(8, 32);
    RemainderTrajectory decay, forced;
    for (int k = 0; k <= 40; ++k) {
      const double t = k / 40.0;
      decay.times.push_back(t);
      decay.r.push_back(shear(g, std::exp(-t)));
      decay.uapp.push_back(zeros(g));
      decay.forcing.push_back(zeros(g));
      // R = t f solves d_t R - Delta_h R = -G with G = -(1 + t) f; u_app = (0, 1/2, 0) only transports
      forced.times.push_back(t);
      forced.r.push_back(shear(g, t));
      VectorField ua = zeros(g);
      ua[1] = sample(g, [](double, double, double) { return 0.5; });
      forced.uapp.push_back(ua);
      forced.forcing.push_back(shear(g, -(1 + t)));
    }
    const BlockEnergyTerms d = check_block_energy_balance(decay, 1, 0, 40);
    const double f2 = l2_norm_sq(shear(g, 1.0)[0]);
    CHECK(d.energy_start == doctest::Approx(0.5 * f2).epsilon(1e-13));
    CHECK(d.dissipation == doctest::Approx(0.5 * f2 * (1 - std::exp(-2.0))).epsilon(1e-7));
    CHECK(d.relative < 1e-7);
    // q = 0 sees nothing of sin(4 x3)
    CHECK(check_block_energy_balance(decay, 0, 0, 40).energy_start < 1e-28);

    const BlockEnergyTerms f = check_block_energy_balance(forced, 1, 0, 40);
    CHECK(std::abs(f.ur) < 1e-12);
    CHECK(f.relative < 1e-12);
  }

  TEST_CASE("trilinear checks filter a vanishing advecting field") {
    const Grid g = Grid::make(8, 32);
    std::vector<VectorField> zero(3, zeros(g)), r(3, shear(g, 1.0));
    const std::vector<double> t{0.0, 0.1, 0.2};
    const TrilinearReport rr = check_trilinear(Trilinear::rr, zero, zero, t, 0, 2);
    CHECK(rr.ratios.samples.empty());
    CHECK(rr.sqrt_sum == 0.0);
    const TrilinearReport ur = check_trilinear(Trilinear::ur, zero, r, t, 0, 2);
    CHECK(ur.ratios.samples.empty());
    CHECK(ur.ratios.filtered == static_cast<std::size_t>(lp::index_range(g, lp::Axis::vertical).count()));
  }

  TEST_CASE("trilinear and J_q ratios are scale invariant and finite") {
    const Grid g = Grid::make(16, 16);
    RemainderTrajectory a, b;
    for (int k = 0; k <= 4; ++k) {
      VectorField r = leray_project(VectorField{gaussian_field(g, {0, 3, 0, 3}, 10 + k),
                                                gaussian_field(g, {0, 3, 0, 3}, 20 + k),
                                                gaussian_field(g, {0, 3, 0, 3}, 30 + k)})
                          .u;
      VectorField u = leray_project(VectorField{gaussian_field(g, {0, 2, 0, 2}, 40 + k),
                                                gaussian_field(g, {0, 2, 0, 2}, 50 + k),
                                                gaussian_field(g, {0, 2, 0, 2}, 60 + k)})
                          .u;
      a.times.push_back(0.1 * k);
      b.times.push_back(0.1 * k);
      a.r.push_back(r);
      b.r.push_back(4.0 * r);
      a.uapp.push_back(u);
      b.uapp.push_back(0.5 * u);
      a.forcing.push_back(zeros(g));
      b.forcing.push_back(zeros(g));
    }
    const auto ra = check_trilinear(Trilinear::rr, a.r, a.r, a.times, 0, 4);
    const auto rb = check_trilinear(Trilinear::rr, b.r, b.r, b.times, 0, 4);
    CHECK(std::isfinite(ra.sqrt_sum));
    CHECK(ra.sqrt_sum > 0.0);
    CHECK(rb.sqrt_sum == doctest::Approx(ra.sqrt_sum).epsilon(1e-12));
    const auto ua = check_trilinear(Trilinear::ur, a.uapp, a.r, a.times, 0, 4);
    const auto ub = check_trilinear(Trilinear::ur, b.uapp, b.r, b.times, 0, 4);
    CHECK(ub.sqrt_sum == doctest::Approx(ua.sqrt_sum).epsilon(1e-12));
    const auto ja = check_jq(a, 0, 4);
    const auto jb = check_jq(b, 0, 4);
    CHECK(std::isfinite(ja.sqrt_sum));
    CHECK(jb.sqrt_sum == doctest::Approx(ja.sqrt_sum).epsilon(1e-12));
    for (const auto& s : ja.ratios.samples) CHECK(s.ratio >= 0.0);
  }

  TEST_CASE("suite runner") {
    CHECK(lab::suite_names().size() == 5);
    CHECK_THROWS_AS(lab::run_suite("nope", {}), std::invalid_argument);
    lab::SuiteOptions o;
    o.samples = 3;
    o.coarse = 16;
    o.fine = 0;
    const auto c = lab::run_suite("estimate11", o);
    REQUIRE(c.size() == 1);
    CHECK(c[0].n_samples == 3 * 3);
    CHECK(std::isfinite(c[0].max_ratio));
    CHECK(lab::to_json(c[0]).contains("spread"));
  }
}
