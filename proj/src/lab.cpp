#include "anivisc/lab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "anivisc/estimates.hpp"
#include "anivisc/experiment.hpp"
#include "anivisc/random_fields.hpp"

namespace anivisc::lab {
namespace {

using est::RatioReport;

int max_ball_index(int n) {
  // largest q with 2^q < n / 2
  int q = 0;
  while (std::ldexp(1.0, q + 1) < n / 2) ++q;
  return q;
}

std::vector<std::uint64_t> seeds_for(std::uint64_t base, std::size_t n) {
  std::vector<std::uint64_t> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = base + i;
  return s;
}

std::string fmt_p(double p) { return std::isinf(p) ? "inf" : std::to_string(static_cast<int>(p)); }

CheckSummary summarize(const std::string& id, const SuiteOptions& opt, const RatioReport& rc,
                       const RatioReport* rf) {
  CheckSummary c;
  c.check_id = id;
  c.grid = rc.grid;
  c.n_samples = rc.samples.size();
  c.max_ratio = rc.max_ratio();
  c.spread = rc.spread();
  bool ok = std::isfinite(c.max_ratio) && c.n_samples > 0 && c.spread < opt.spread_limit;
  if (rf) {
    c.refined_value = rf->max_ratio();
    c.refinement_change = std::abs(c.refined_value - c.max_ratio) / c.max_ratio;
    ok = ok && c.refinement_change < opt.refinement_limit && rf->spread() < opt.spread_limit;
    c.grid += " -> " + rf->grid;
  }
  c.pass = ok;
  return c;
}

// make(n) builds the report with n as the refined dimension.
template <class Make>
CheckSummary sweep_check(const std::string& id, const SuiteOptions& opt, Make make) {
  const RatioReport rc = make(opt.coarse);
  if (opt.fine <= 0) return summarize(id, opt, rc, nullptr);
  const RatioReport rf = make(opt.fine);
  return summarize(id, opt, rc, &rf);
}

std::vector<CheckSummary> bernstein(const SuiteOptions& opt) {
  std::vector<CheckSummary> out;
  const int qmax = max_ball_index(opt.coarse);
  struct Cfg { int alpha; double p1, p2; };
  for (Cfg cfg : {Cfg{0, double(INFINITY), 2.0}, Cfg{1, 2.0, 2.0}, Cfg{1, double(INFINITY), 2.0}}) {
    const std::string id = "bernstein.vertical(alpha=" + std::to_string(cfg.alpha) + ",p1=" + fmt_p(cfg.p1) +
                           ",p2=" + fmt_p(cfg.p2) + ")";
    out.push_back(sweep_check(id, opt, [&](int n) {
      const Grid g = Grid::make(opt.coarse, n);
      RatioReport r;
      for (int q = 0; q <= qmax; ++q) {
        const std::uint64_t base = opt.seed + 1000 * q;
        const auto s = est::vertical_band_samples(g, 0.0, std::ldexp(1.0, q), opt.samples, base);
        RatioReport rq = est::check_bernstein_vertical(s, q, cfg.alpha, cfg.p1, cfg.p2, seeds_for(base, s.size()));
        r.id = rq.id;
        r.grid = rq.grid;
        r.merge(rq);
      }
      return r;
    }));
  }
  for (double p : {2.0, double(INFINITY)}) {
    out.push_back(sweep_check("bernstein.inverse(p=" + fmt_p(p) + ")", opt, [&](int n) {
      const Grid g = Grid::make(opt.coarse, n);
      RatioReport r;
      for (int q = 0; q + 1 <= qmax; ++q) {
        const std::uint64_t base = opt.seed + 5000 + 1000 * q;
        const auto s = est::vertical_band_samples(g, std::ldexp(1.0, q), std::ldexp(1.0, q + 1), opt.samples, base);
        RatioReport rq = est::check_inverse_bernstein(s, q, p, seeds_for(base, s.size()));
        r.id = rq.id;
        r.grid = rq.grid;
        r.merge(rq);
      }
      return r;
    }));
  }
  for (double p1 : {4.0, double(INFINITY)}) {
    out.push_back(sweep_check("bernstein.horizontal(p1=" + fmt_p(p1) + ",p2=2)", opt, [&](int n) {
      const Grid g = Grid::make(n, opt.coarse);
      RatioReport r;
      for (int j = 1; j <= qmax; ++j) {
        const std::uint64_t base = opt.seed + 9000 + 1000 * j;
        const auto s = est::horizontal_band_samples(g, 0.0, std::ldexp(1.0, j), opt.samples, base);
        RatioReport rj = est::check_bernstein_horizontal(s, j, p1, 2.0, seeds_for(base, s.size()));
        r.id = rj.id;
        r.grid = rj.grid;
        r.merge(rj);
      }
      return r;
    }));
  }
  return out;
}

std::vector<CheckSummary> estimate11(const SuiteOptions& opt) {
  const int qmax = max_ball_index(opt.coarse);
  return {sweep_check("estimate11(s=1/2)", opt, [&](int n) {
    const Grid g = Grid::make(n, n);
    RatioReport r;
    for (int q = 0; q <= qmax; ++q) {
      std::vector<SpectralField> s;
      const std::uint64_t base = opt.seed + 20000 + 1000 * q;
      for (std::size_t i = 0; i < opt.samples; ++i) s.push_back(gaussian_field(g, {0.0, 4.0, 0.0, std::ldexp(1.0, q)}, base + i));
      RatioReport rq = est::check_estimate11(s, 0.5, q, seeds_for(base, s.size()));
      r.id = rq.id;
      r.grid = rq.grid;
      r.merge(rq);
    }
    return r;
  })};
}

std::vector<CheckSummary> product(const SuiteOptions& opt) {
  const int qmax = max_ball_index(opt.coarse);
  auto make = [&](int n) {
    const Grid g = Grid::make(n, n);
    std::vector<RatioReport> out(3);
    for (int q = 0; q <= qmax; ++q) {
      std::vector<std::pair<SpectralField, SpectralField>> pairs;
      const std::uint64_t base = opt.seed + 40000 + 1000 * q;
      const Band band{0.0, 3.0, 0.0, std::ldexp(1.0, q)};
      for (std::size_t i = 0; i < opt.samples; ++i)
        pairs.emplace_back(gaussian_field(g, band, base + 2 * i), gaussian_field(g, band, base + 2 * i + 1));
      const std::vector<RatioReport> reps = est::check_product_laws(pairs, 0.5, q, seeds_for(base, pairs.size()));
      for (int law = 0; law < 3; ++law) {
        out[law].id = reps[law].id;
        out[law].grid = reps[law].grid;
        out[law].merge(reps[law]);
      }
    }
    return out;
  };
  const std::vector<RatioReport> rc = make(opt.coarse);
  std::vector<RatioReport> rf;
  if (opt.fine > 0) rf = make(opt.fine);
  std::vector<CheckSummary> out;
  for (int law = 0; law < 3; ++law)
    out.push_back(summarize(rc[law].id + "(s=1/2)", opt, rc[law], rf.empty() ? nullptr : &rf[law]));
  return out;
}

Profiles default_profiles(int n) {
  return build_profiles(InitialDataSpec{}, Grid::make(n, n));
}

std::vector<CheckSummary> trilinear(const SuiteOptions& opt) {
  StepperConfig cfg{0.01, 0.5, Scheme::if_rk4, 5, true, 0.5};
  struct Sums { est::TrilinearReport rr, ur, jq; };
  auto run = [&](int n) {
    const est::RemainderTrajectory t = remainder_trajectory(default_profiles(n), 2, cfg);
    const std::size_t last = t.r.size() - 1;
    return Sums{est::check_trilinear(est::Trilinear::rr, t.r, t.r, t.times, 0, last),
                est::check_trilinear(est::Trilinear::ur, t.uapp, t.r, t.times, 0, last),
                est::check_jq(t, 0, last)};
  };
  const Sums c = run(opt.coarse);
  Sums f;
  if (opt.fine > 0) f = run(opt.fine);
  std::vector<CheckSummary> out;
  auto add = [&](const est::TrilinearReport& rc, const est::TrilinearReport& rf) {
    CheckSummary s;
    s.check_id = rc.ratios.id + " sum_q ratio_q^(1/2)";
    s.grid = rc.ratios.grid;
    s.n_samples = rc.ratios.samples.size();
    s.max_ratio = rc.sqrt_sum;
    bool ok = std::isfinite(rc.sqrt_sum) && s.n_samples > 0;
    if (opt.fine > 0) {
      s.grid += " -> " + rf.ratios.grid;
      s.refined_value = rf.sqrt_sum;
      s.refinement_change = std::abs(rf.sqrt_sum - rc.sqrt_sum) / rc.sqrt_sum;
      ok = ok && s.refinement_change < opt.refinement_limit;
    }
    std::ostringstream d;
    d << "max ratio_q " << rc.ratios.max_ratio() << ", default data, m = 2, t in [0, 0.5]";
    s.detail = d.str();
    s.pass = ok;
    out.push_back(s);
  };
  add(c.rr, f.rr);
  add(c.ur, f.ur);
  add(c.jq, f.jq);
  return out;
}

std::vector<CheckSummary> energy(const SuiteOptions& opt) {
  const Profiles p = default_profiles(opt.coarse);
  const est::RemainderTrajectory traj = remainder_trajectory(p, 2, {2.5e-3, 0.25, Scheme::if_rk4, 2, true, 0.5});
  const std::size_t last = traj.r.size() - 1;
  const lp::IndexRange range = lp::index_range(traj.r[0][0].grid(), lp::Axis::vertical);
  std::vector<std::pair<int, est::BlockEnergyTerms>> terms;
  double top = 0.0;
  for (int q = range.lo; q <= range.hi; ++q) {
    terms.emplace_back(q, est::check_block_energy_balance(traj, q, 0, last));
    const auto& e = terms.back().second;
    top = std::max(top, e.energy_start + e.energy_end + e.dissipation);
  }
  // blocks far below the energetic ones only measure roundoff
  std::string skipped;
  std::vector<CheckSummary> out;
  for (const auto& [q, e] : terms) {
    if (e.energy_start + e.energy_end + e.dissipation < 1e-9 * top) {
      skipped += (skipped.empty() ? "" : ",") + std::to_string(q);
      continue;
    }
    CheckSummary s;
    s.check_id = "block_energy_balance(q=" + std::to_string(q) + ")";
    s.grid = est::describe(traj.r[0][0].grid());
    s.n_samples = traj.r.size();
    s.max_ratio = e.relative;
    std::ostringstream d;
    d << "m = 2, dt = 2.5e-3, t in [0, 0.25]; terms: dE=" << e.energy_end - e.energy_start
      << " diss=" << e.dissipation << " RR=" << e.rr << " uR=" << e.ur << " Ru=" << e.ru << " F=" << e.force;
    s.detail = d.str();
    s.pass = e.relative < opt.energy_tolerance;
    out.push_back(s);
  }
  if (!skipped.empty())
    for (auto& s : out) s.detail += "; negligible blocks q=" + skipped;
  return out;
}

}  // namespace

std::vector<std::string> suite_names() { return {"bernstein", "estimate11", "product", "trilinear", "energy"}; }

std::vector<CheckSummary> run_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "bernstein") return bernstein(opt);
  if (name == "estimate11") return estimate11(opt);
  if (name == "product") return product(opt);
  if (name == "trilinear") return trilinear(opt);
  if (name == "energy") return energy(opt);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

nlohmann::json to_json(const CheckSummary& c) {
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  return {{"check_id", c.check_id},
          {"grid", c.grid},
          {"n_samples", c.n_samples},
          {"max_ratio", num(c.max_ratio)},
          {"spread", num(c.spread)},
          {"refined_value", num(c.refined_value)},
          {"refinement_change", num(c.refinement_change)},
          {"pass", c.pass},
          {"detail", c.detail}};
}

}  // namespace anivisc::lab
