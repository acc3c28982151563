#include <catch_amalgamated.hpp>

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <random>

#include "cdkink/experiments.hpp"
#include "cdkink/validation.hpp"

using namespace cdkink;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

RunParams tfim(int L, double T, int n, Method m = Method::ODE) {
  RunParams r;
  r.L = L;
  r.protocol.T = T;
  r.cd.order = n;
  r.method = m;
  return r;
}

double kappa1(const RunParams& r) { return cumulants_from_probs(compute_table(r), 1).kappa[0]; }

}  // namespace

TEST_CASE("log-spaced values", "[experiments]") {
  const auto v = log_space(1, 1000, 4);
  REQUIRE(v.size() == 4);
  CHECK(v.front() == 1.0);
  CHECK(v.back() == 1000.0);
  CHECK_THAT(v[1], WithinRel(10.0, 1e-14));
  CHECK_THROWS_AS(log_space(0, 10, 3), ValidationError);
  CHECK_THROWS_AS(log_space(1, 10, 1), ValidationError);
}

TEST_CASE("sweep specification", "[experiments]") {
  SweepSpec s;
  CHECK_THROWS_AS(validate(s), ValidationError);
  s.values = {1, 2, 2};
  CHECK_THROWS_AS(validate(s), ValidationError);
  s.values = {-1, 2};
  CHECK_THROWS_AS(validate(s), ValidationError);
  s.values = {1, 2};
  CHECK_NOTHROW(validate(s));
  CHECK_THROWS_AS(run_sweep(SweepSpec{}), ValidationError);
  CHECK_THROWS_AS(with_value(RunParams{}, SweepVariable::n, 2.5), ValidationError);
  CHECK(with_value(RunParams{}, SweepVariable::alpha, 2.5).alpha == 2.5);
  CHECK(to_string(SweepVariable::beta) == "beta");
}

TEST_CASE("sweep over n in the sudden limit", "[experiments]") {
  SweepSpec s;
  s.varying = SweepVariable::n;
  s.values = {8, 16};
  s.fixed = tfim(1600, 1e-6, 0);
  const auto r = run_sweep(s);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].value == 8);
  CHECK(r.rows[1].params.cd.order == 16);
  CHECK_THAT(r.rows[0].report->kappa[0] / r.rows[1].report->kappa[0], WithinRel(2.0, 0.05));
}

TEST_CASE("single-point sweep against the KZ law", "[experiments]") {
  SweepSpec s;
  s.values = {64};
  s.fixed = tfim(1600, 1.0, 0);
  s.fixed.with_distribution = true;
  const auto r = run_sweep(s);
  REQUIRE(r.rows.size() == 1);
  CHECK_THAT(r.rows[0].report->kappa[0], WithinRel(kz_cumulant(1, 64, 1600), 0.03));
  REQUIRE(r.rows[0].distribution.has_value());
  CHECK_THAT(r.rows[0].distribution->mean, WithinRel(r.rows[0].report->kappa[0], 1e-8));
  CHECK(r.rows[0].distribution->tv_gaussian < 0.05);
  CHECK(r.rows[0].wall_seconds > 0);
}

TEST_CASE("failing rows are isolated", "[experiments]") {
  SweepSpec s;
  s.varying = SweepVariable::n;
  s.values = {2, 9, 10};  // orders above L/2 = 8 are rejected
  s.fixed = tfim(16, 1e-3, 0);
  const auto r = run_sweep(s);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.rows[0].error.empty());
  CHECK(r.rows[0].report.has_value());
  CHECK_FALSE(r.rows[1].error.empty());
  CHECK_FALSE(r.rows[1].report.has_value());
  s.values = {9, 10};
  CHECK_THROWS(run_sweep(s));
}

TEST_CASE("sweeps are deterministic", "[experiments][property]") {
  SweepSpec s;
  s.values = {0.3, 1.0};
  s.fixed = tfim(128, 1.0, 4);
  s.fixed.threads = 2;
  const auto a = run_sweep(s);
  s.fixed.threads = 1;
  const auto b = run_sweep(s);
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].report->kappa == b.rows[i].report->kappa);
}

TEST_CASE("power-law fit", "[experiments]") {
  std::vector<double> x{1, 2, 4, 8, 16}, y;
  for (double v : x) y.push_back(3 * std::pow(v, -2));
  const auto f = fit_power_law(x, y);
  CHECK_THAT(f.exponent, WithinAbs(-2.0, 1e-12));
  CHECK_THAT(f.prefactor, WithinRel(3.0, 1e-12));
  CHECK_THAT(f.r_squared, WithinAbs(1.0, 1e-12));

  std::mt19937 rng(7);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::vector<double> xs, ys;
  for (int i = 0; i < 40; ++i) {
    xs.push_back(std::pow(10.0, i / 10.0));
    ys.push_back(5.0 / xs.back() * std::exp(noise(rng)));
  }
  const auto g = fit_power_law(xs, ys);
  CHECK_THAT(g.exponent, WithinAbs(-1.0, 0.05));
  CHECK(g.r_squared > 0.99);
  CHECK(g.r_squared <= 1.0);

  const auto w = fit_power_law(x, y, {1, 4});
  CHECK(w.window.first == 1);
  CHECK(w.window.last == 4);
  CHECK_THROWS_AS(fit_power_law({1, 2}, {1, 2}), ValidationError);
  CHECK_THROWS_AS(fit_power_law({1, 2, 3}, {1, 0, 2}), ValidationError);
  CHECK_THROWS_AS(fit_power_law(x, y, {3, 5}), ValidationError);
}

TEST_CASE("breakdown scale on synthetic crossovers", "[experiments]") {
  // kappa(T) = kz(T) erf(sqrt(pi) P / (2 kz(T))), kz = A / sqrt(T): the half-plateau
  // abscissa follows from a root find on the continuous function.
  const double P = 40.0;
  for (double A : {30.0, 120.0}) {
    auto kappa = [&](double T) {
      const double kz = A / std::sqrt(T);
      return kz * std::erf(std::sqrt(std::numbers::pi) * P / (2 * kz));
    };
    std::uintmax_t it = 200;
    const auto root = boost::math::tools::toms748_solve([&](double lt) { return kappa(std::exp(lt)) - P / 2; }, -10.0, 20.0,
                                                        boost::math::tools::eps_tolerance<double>(50), it);
    const double T_true = std::exp(0.5 * (root.first + root.second));
    const auto Ts = log_space(1e-5 * T_true, 1e3 * T_true, 60);
    std::vector<double> ks;
    for (double T : Ts) ks.push_back(kappa(T));
    const auto b = breakdown_scale(Ts, ks);
    CHECK_THAT(b.T_star, WithinRel(T_true, 0.05));
    CHECK_THAT(b.plateau, WithinRel(P, 1e-3));
  }
  CHECK_THROWS_AS(breakdown_scale({1, 2, 3, 4, 5}, {10, 9.9, 9.8, 9.7, 9.6}), ValidationError);
  CHECK_THROWS_AS(breakdown_scale({1, 2, 3}, {10, 9, 8}), ValidationError);
}

TEST_CASE("scaling collapse", "[experiments]") {
  std::vector<ProbabilityTable> ts;
  for (int n : {8, 16, 32}) ts.push_back(compute_table(tfim(1600, 1e-6, n)));
  CHECK(collapse_check({ts[0], ts[0]}) == 0.0);
  // The exact sudden probabilities themselves differ by 0.036 between n = 8 and
  // 32 near x = 1, so the ODE collapse is checked against theirs.
  std::vector<ProbabilityTable> exact;
  for (int n : {8, 16, 32}) exact.push_back(compute_table(tfim(1600, 1e-6, n, Method::AnalyticFast)));
  const double dev = collapse_check(ts);
  INFO("collapse deviation " << dev);
  CHECK_THAT(dev, WithinAbs(collapse_check(exact), 1e-3));
  CHECK(collapse_check({ts[1], ts[2]}) <= 0.02);

  auto other = compute_table(tfim(1600, 1e-5, 16));
  CHECK_THROWS_AS(collapse_check({ts[0], other}), ValidationError);
  CHECK_THROWS_AS(collapse_check({ts[0]}), ValidationError);
  CHECK_THROWS_AS(collapse_check({compute_table(tfim(1600, 1e-6, 0)), ts[0]}), ValidationError);
}

TEST_CASE("plateau decreases monotonically with n", "[experiments][property]") {
  double prev = 1e300;
  for (int n : {4, 8, 16, 32, 64}) {
    const double k = kappa1(tfim(1600, 1e-3, n));
    CHECK(k < prev);
    prev = k;
  }
}

TEST_CASE("plateau is flat well below the breakdown scale", "[experiments][property]") {
  const double ratio = kappa1(tfim(1600, 1.0, 16)) / kappa1(tfim(1600, 1e-6, 16));
  INFO("ratio " << ratio);
  CHECK(ratio >= 0.9);
  CHECK(ratio <= 1.0);
}

TEST_CASE("LRKM runs through the common entry point", "[experiments]") {
  RunParams r = tfim(64, 1e-6, 4, Method::AnalyticUniversal);
  r.model = Model::LRKM;
  r.alpha = 2.5;
  r.beta = 1.8;
  const auto t = compute_table(r);
  CHECK(t.meta.model == Model::LRKM);
  CHECK(t.meta.beta == 1.8);
}

TEST_CASE("validation suite plumbing", "[experiments]") {
  SECTION("registry tiers") {
    std::vector<std::string> quick, all;
    for (const auto& e : criteria()) {
      all.push_back(e.id);
      if (e.quick) quick.push_back(e.id);
    }
    CHECK(all == std::vector<std::string>{"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "A10", "P1"});
    CHECK(std::find(quick.begin(), quick.end(), "A8") == quick.end());
    CHECK(std::find(quick.begin(), quick.end(), "P1") != quick.end());
    CHECK_THROWS_AS(run_criterion("A99"), ValidationError);
  }
  SECTION("tampered plateau constant is caught") {
    const auto m = measure_plateaus(1600, {16, 32, 64}, 1e-6);
    CriterionResult good{"A3", "plateaus"}, bad{"A3", "plateaus"};
    judge_plateaus(good, m, {plateau_constant(1), plateau_constant(2), fast_plateau_integral(3) / std::numbers::pi});
    judge_plateaus(bad, m, {1.2 / std::numbers::pi, plateau_constant(2), fast_plateau_integral(3) / std::numbers::pi});
    CHECK(good.passed);
    CHECK_FALSE(bad.passed);
    CHECK(bad.details.size() == good.details.size());
  }
  SECTION("summary line") {
    CriterionResult r{"X1", "title"};
    r.check(true, "fine");
    CHECK(summary_line(r).rfind("PASS X1", 0) == 0);
    r.check(false, "broken");
    CHECK(summary_line(r).rfind("FAIL X1", 0) == 0);
    CHECK(r.details.back().rfind("FAIL", 0) == 0);
  }
}
