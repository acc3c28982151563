#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "dynamics.hpp"
#include "experiments.hpp"
#include "kitaev.hpp"
#include "model.hpp"
#include "statistics.hpp"

// Acceptance criteria A1-A10 and the P1 property suite, shared by the CLI
// `validate` command and the acceptance test binary.
namespace cdkink {

enum class ValidationLevel { quick, full };

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = true;
  std::vector<std::string> details;  // one measured quantity per entry
  double seconds = 0.0;

  CriterionResult() = default;
  CriterionResult(std::string id_, std::string title_) : id(std::move(id_)), title(std::move(title_)) {}

  // Records a check; the criterion passes only if every check does.
  void check(bool ok, const std::string& what) {
    passed = passed && ok;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

struct ValidationReport {
  std::vector<CriterionResult> results;

  bool all_passed() const {
    for (const auto& r : results)
      if (!r.passed) return false;
    return true;
  }
};

namespace detail {

inline std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

inline std::string num(double x) { return fmt("%.6g", x); }

inline bool within_rel(double value, double target, double tol) { return std::abs(value / target - 1.0) <= tol; }

inline std::string rel_line(const std::string& name, double value, double target, double tol) {
  return name + " = " + num(value) + " (target " + num(target) + " +-" + num(100 * tol) + "%, dev " +
         fmt("%+.2f%%", 100 * (value / target - 1.0)) + ")";
}

inline CumulantReport tfim_cumulants(int L, double T, int n, Method m = Method::ODE, CDForm form = CDForm::TermSum,
                                     int threads = 0) {
  RunParams r;
  r.L = L;
  r.protocol.T = T;
  r.cd = {n, form};
  r.method = m;
  r.threads = threads;
  return cumulants_from_probs(compute_table(r));
}

// Slope of y = s x through the origin.
inline double origin_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
  }
  return sxy / sxx;
}

}  // namespace detail

// ---- A3 is split so the judgement can be re-run against altered constants.

struct PlateauMeasurement {
  int L = 1600;
  std::vector<int> ns;
  std::vector<std::array<double, 3>> kappa;  // kappa_1..3 per n
};

inline PlateauMeasurement measure_plateaus(int L, const std::vector<int>& ns, double T, int threads = 0) {
  PlateauMeasurement m;
  m.L = L;
  m.ns = ns;
  for (int n : ns) {
    const auto r = detail::tfim_cumulants(L, T, n, Method::ODE, CDForm::TermSum, threads);
    m.kappa.push_back({r.kappa[0], r.kappa[1], r.kappa[2]});
  }
  return m;
}

inline void judge_plateaus(CriterionResult& out, const PlateauMeasurement& m, const std::array<double, 3>& constants,
                           double tol = 0.05) {
  for (int q = 1; q <= 3; ++q) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < m.ns.size(); ++i) {
      const double scaled = m.ns[i] * m.kappa[i][q - 1] / m.L;
      out.check(detail::within_rel(scaled, constants[q - 1], tol),
                "n=" + std::to_string(m.ns[i]) + " " + detail::rel_line("n kappa_" + std::to_string(q) + "/L", scaled, constants[q - 1], tol));
      xs.push_back(m.ns[i]);
      ys.push_back(m.kappa[i][q - 1]);
    }
    const auto fit = fit_power_law(xs, ys);
    out.check(std::abs(fit.exponent + 1.0) <= 0.05,
              "slope kappa_" + std::to_string(q) + " vs n = " + detail::num(fit.exponent) + " (target -1 +-0.05)");
  }
}

// ---- criteria

inline CriterionResult criterion_a1(int threads = 0) {
  CriterionResult c{"A1", "Sudden no-CD cumulants (L=1600, T=1e-6, n=0, ODE)"};
  const auto r = detail::tfim_cumulants(1600, 1e-6, 0, Method::ODE, CDForm::TermSum, threads);
  c.check(detail::within_rel(r.densities[0], 0.5, 0.01), detail::rel_line("kappa_1/L", r.densities[0], 0.5, 0.01));
  c.check(detail::within_rel(r.densities[1], 0.25, 0.01), detail::rel_line("kappa_2/L", r.densities[1], 0.25, 0.01));
  c.check(std::abs(r.densities[2]) < 1e-3, "|kappa_3|/L = " + detail::num(std::abs(r.densities[2])) + " (< 1e-3)");
  return c;
}

inline CriterionResult criterion_a2(int threads = 0) {
  CriterionResult c{"A2", "KZ law and T convention (L=1600, n=0, T=16,64,256)"};
  const std::vector<double> Ts{16, 64, 256};
  std::vector<double> ks;
  for (double T : Ts) {
    const auto r = detail::tfim_cumulants(1600, T, 0, Method::ODE, CDForm::TermSum, threads);
    const double kz = kz_cumulant(1, T, 1600);
    c.check(detail::within_rel(r.kappa[0], kz, 0.03), "T=" + detail::num(T) + " " + detail::rel_line("kappa_1", r.kappa[0], kz, 0.03));
    ks.push_back(r.kappa[0]);
  }
  const auto fit = fit_power_law(Ts, ks);
  c.check(std::abs(fit.exponent + 0.5) <= 0.02, "fitted exponent = " + detail::num(fit.exponent) + " (target -0.5 +-0.02)");
  return c;
}

inline CriterionResult criterion_a3(int threads = 0) {
  CriterionResult c{"A3", "CD plateau constants (L=1600, T=1e-6, n=16,32,64)"};
  const auto m = measure_plateaus(1600, {16, 32, 64}, 1e-6, threads);
  judge_plateaus(c, m, {plateau_constant(1), plateau_constant(2), plateau_constant(3)});
  return c;
}

inline CriterionResult criterion_a4(int threads = 0) {
  CriterionResult c{"A4", "n=1 sudden values, summation and ODE (L=1600, T=1e-6)"};
  const std::array<double, 3> target{0.2, 0.096, 0.112};
  const auto eq = detail::tfim_cumulants(1600, 1e-6, 1, Method::AnalyticFast, CDForm::TermSum, threads);
  const auto ode = detail::tfim_cumulants(1600, 1e-6, 1, Method::ODE, CDForm::TermSum, threads);
  for (int q = 1; q <= 3; ++q) {
    const std::string name = "kappa_" + std::to_string(q) + "/L";
    c.check(detail::within_rel(eq.densities[q - 1], target[q - 1], 0.02), "summation " + detail::rel_line(name, eq.densities[q - 1], target[q - 1], 0.02));
    c.check(detail::within_rel(ode.densities[q - 1], target[q - 1], 0.02), "ODE " + detail::rel_line(name, ode.densities[q - 1], target[q - 1], 0.02));
  }
  return c;
}

inline CriterionResult criterion_a5(int threads = 0) {
  CriterionResult c{"A5", "Sudden correction slope (n=8, L=1600, T=0.05..0.8)"};
  const int n = 8, L = 1600;
  const auto base = detail::tfim_cumulants(L, 1e-6, n, Method::ODE, CDForm::TermSum, threads);
  const std::vector<double> Ts{0.05, 0.1, 0.2, 0.4, 0.8};
  std::array<std::vector<double>, 3> delta;
  for (double T : Ts) {
    const auto r = detail::tfim_cumulants(L, T, n, Method::ODE, CDForm::TermSum, threads);
    for (int q = 0; q < 3; ++q) delta[q].push_back(r.kappa[q] - base.kappa[q]);
  }
  const double slope = detail::origin_slope(Ts, delta[0]);
  const double target = -0.7 / (n * n * n) * (L / 1600.0);
  c.check(detail::within_rel(slope, target, 0.15), detail::rel_line("d kappa_1/dT", slope, target, 0.15));
  for (int q = 0; q < 3; ++q) {
    bool negative = true;
    std::string vals;
    for (double d : delta[q]) {
      negative = negative && d < 0;
      vals += " " + detail::num(d);
    }
    c.check(negative, "signs of delta kappa_" + std::to_string(q + 1) + ":" + vals);
  }
  c.details.push_back("info density form c'_1 L T n^-3: slope " + detail::num(sudden_correction(1, 1.0, n, L)) +
                      ", quadratic coefficient " + detail::num(detail::origin_slope(
                          [&] { std::vector<double> t2; for (double T : Ts) t2.push_back(T * T); return t2; }(), delta[0])));
  return c;
}

inline CriterionResult criterion_a6(int threads = 0) {
  CriterionResult c{"A6", "Cumulant ratio plateaus (n=32, T=1e-6; n=0, T=256)"};
  const auto fast = detail::tfim_cumulants(1600, 1e-6, 32, Method::ODE, CDForm::TermSum, threads);
  const auto kz = detail::tfim_cumulants(1600, 256, 0, Method::ODE, CDForm::TermSum, threads);
  auto abs_line = [](const std::string& name, double v, double t, double tol) {
    return name + " = " + detail::num(v) + " (target " + detail::num(t) + " +-" + detail::num(tol) + ")";
  };
  c.check(std::abs(fast.ratio21 - 0.82) <= 0.03, abs_line("fast kappa_2/kappa_1", fast.ratio21, 0.82, 0.03));
  c.check(std::abs(fast.ratio31 - 0.73) <= 0.03, abs_line("fast kappa_3/kappa_1", fast.ratio31, 0.73, 0.03));
  c.check(std::abs(kz.ratio31 - 0.132) <= 0.007, abs_line("KZ kappa_3/kappa_1", kz.ratio31, 0.132, 0.007));
  return c;
}

inline SweepResult t_sweep(int n, const std::vector<double>& Ts, int threads) {
  SweepSpec s;
  s.varying = SweepVariable::T;
  s.values = Ts;
  s.fixed.L = 1600;
  s.fixed.cd.order = n;
  s.fixed.q_max = 1;
  s.fixed.threads = threads;
  return run_sweep(s);
}

// Plateau points at n^2/1024 .. n^2/256, then n^2/16 .. 4 n^2 in steps of sqrt 2.
inline std::vector<double> breakdown_grid(int n) {
  std::vector<double> Ts;
  const double n2 = static_cast<double>(n) * n;
  for (int j : {-20, -18, -16}) Ts.push_back(n2 * std::pow(2.0, 0.5 * j));
  for (int j = -8; j <= 4; ++j) Ts.push_back(n2 * std::pow(2.0, 0.5 * j));
  return Ts;
}

inline CriterionResult criterion_a7(int threads = 0) {
  CriterionResult c{"A7", "Crossover ansatz and breakdown scale (n=16, L=1600)"};
  const auto grid = log_space(1.0, 2560.0, 12);
  const auto sweep = t_sweep(16, grid, threads);
  for (const auto& row : sweep.rows) {
    if (!row.report) {
      c.check(false, "T=" + detail::num(row.value) + " failed: " + row.error);
      continue;
    }
    const double ans = crossover_ansatz(1, row.value, 16, 1600);
    c.check(detail::within_rel(ans, row.report->kappa[0], 0.10),
            "T=" + detail::num(row.value) + " ansatz " + detail::num(ans) + " vs ODE " + detail::num(row.report->kappa[0]) + " (" +
                detail::fmt("%+.2f%%", 100 * (ans / row.report->kappa[0] - 1)) + ", tol 10%)");
  }
  const auto b8 = breakdown_scale(t_sweep(8, breakdown_grid(8), threads));
  const auto b16 = breakdown_scale(t_sweep(16, breakdown_grid(16), threads));
  const double ratio = b16.T_star / b8.T_star;
  c.details.push_back("info T*(8) = " + detail::num(b8.T_star) + " (plateau " + detail::num(b8.plateau) + "), T*(16) = " +
                      detail::num(b16.T_star) + " (plateau " + detail::num(b16.plateau) + ")");
  c.check(detail::within_rel(ratio, 4.0, 0.30), detail::rel_line("T*(16)/T*(8)", ratio, 4.0, 0.30));
  return c;
}

inline double lrkm_sudden_kappa1(const LRKMSpec& s, int n, int threads) {
  QuenchProtocol p;
  p.T = 1e-6;
  return cumulants_from_probs(lrkm_probability_table(s, p, {n, CDForm::TermSum}, Method::AnalyticUniversal, {}, threads), 1).kappa[0];
}

// Max relative deviation of every LRKM operation at alpha = beta = 50 from its TFIM counterpart.
inline double lrkm_short_range_deviation(int L) {
  const LRKMSpec s{L, 50.0, 50.0};
  const auto t = couplings(s);
  const auto w = lrkm_cd_weights(s);
  double dev = 0.0;
  auto rel = [&](double a, double b) { dev = std::max(dev, std::abs(a - b) / std::max(std::abs(b), 1e-9)); };
  for (std::size_t i = 0; i < t.momenta.size(); ++i) {
    const double k = t.momenta[i];
    rel(t.j_alpha[i], std::cos(k));
    rel(t.d_beta[i], std::sin(k));
    for (double g : {0.0, 0.5, 0.9, 1.0, 1.5, 5.0}) {
      rel(lrkm_series(k, 8, w, L)(g), cd_coefficient_termsum(k, g, 8, L));
      const double j = t.j_alpha[i], d = t.d_beta[i];
      rel(d / (2.0 * (d * d + (g - j) * (g - j))), cd_coefficient_exact(k, g));
    }
    if (i % 16 == 0) {
      rel(lrkm_cd_exact(k, 0.7, s), cd_coefficient_exact(k, 0.7));
      rel(lrkm_p_sudden(8, k, s), p_fast_universal(8, k));
    }
    const double a = 0.3 + 0.001 * i;
    const Spinor st{std::polar(std::cos(a), 0.4), std::polar(std::sin(a), -1.1)};
    rel(lrkm_excited_projection(st, k, t), excitation_probability(st, k));
  }
  return dev;
}

inline CriterionResult criterion_a8(int threads = 0) {
  CriterionResult c{"A8", "LRKM universality (alpha=beta=3, L=1024, sudden limit)"};
  const std::vector<double> ns{8, 16, 32, 64};
  for (auto [a, b] : {std::pair{3.0, 3.0}, std::pair{2.5, 1.8}}) {
    std::vector<double> ks;
    for (double n : ns) ks.push_back(lrkm_sudden_kappa1({1024, a, b}, static_cast<int>(n), threads));
    const auto fit = fit_power_law(ns, ks);
    const std::string label = "alpha=" + detail::num(a) + " beta=" + detail::num(b);
    std::string vals;
    for (double k : ks) vals += " " + detail::num(k);
    const std::string line = label + " slope = " + detail::num(fit.exponent) + " (target -1 +-0.1); kappa_1:" + vals;
    if (a == 3.0)
      c.check(std::abs(fit.exponent + 1.0) <= 0.1, line);
    else
      c.details.push_back("info " + line);
  }
  const double dev = lrkm_short_range_deviation(1024);
  c.check(dev <= 1e-6, "short-range reduction max rel deviation = " + detail::num(dev) + " (<= 1e-6)");
  return c;
}

inline CriterionResult criterion_a9(int threads = 0) {
  CriterionResult c{"A9", "Distribution Gaussianity (L=1600, T=2, n=4,8)"};
  std::array<CumulantReport, 2> reps;
  std::array<double, 2> means{};
  const std::array<int, 2> ns{4, 8};
  for (int i = 0; i < 2; ++i) {
    RunParams r;
    r.protocol.T = 2.0;
    r.cd.order = ns[i];
    r.threads = threads;
    const auto t = compute_table(r);
    reps[i] = cumulants_from_probs(t);
    const auto d = distribution_exact(t, threads);
    const auto gs = gaussian_surrogate(reps[i].kappa[0], reps[i].kappa[1], d.support);
    const double tv = total_variation(d, gs);
    means[i] = distribution_mean(d);
    c.check(tv < 0.05, "n=" + std::to_string(ns[i]) + " TV(exact, gaussian) = " + detail::num(tv) + " (< 0.05); mean " +
                           detail::num(means[i]) + ", variance " + detail::num(distribution_variance(d)));
  }
  c.check(means[1] < means[0], "mean shifts toward 0 as n doubles");
  for (int q = 0; q < 2; ++q) {
    const double ratio = reps[0].kappa[q] / reps[1].kappa[q];
    c.check(detail::within_rel(ratio, 2.0, 0.15), detail::rel_line("kappa_" + std::to_string(q + 1) + "(n=4)/kappa(n=8)", ratio, 2.0, 0.15));
  }
  return c;
}

inline CriterionResult criterion_a10(int threads = 0) {
  CriterionResult c{"A10", "Adiabatic threshold (L=64, n=ceil(1.05*64/(2 pi)))"};
  const int n = static_cast<int>(std::ceil(1.05 * 64 / (2 * std::numbers::pi)));
  const auto ode = detail::tfim_cumulants(64, 1e-6, n, Method::ODE, CDForm::TermSum, threads);
  const auto eq = detail::tfim_cumulants(64, 1e-6, n, Method::AnalyticFast, CDForm::TermSum, threads);
  c.check(n == 11, "n = " + std::to_string(n));
  c.check(ode.kappa[0] <= 2.2, "sudden kappa_1 (ODE) = " + detail::num(ode.kappa[0]) + " (<= 2.2); summation " + detail::num(eq.kappa[0]));
  RunParams r;
  r.L = 64;
  r.protocol.T = 0.01;
  r.cd = {0, CDForm::Exact};
  r.threads = threads;
  double sum = 0.0;
  for (double p : compute_table(r).probs) sum += p;
  c.check(sum < 1e-3, "exact CD sum p_k at T=0.01 = " + detail::num(sum) + " (< 1e-3)");
  return c;
}

// ---- P1: module invariants that are cheap enough for the quick tier.

inline CriterionResult criterion_p1(int threads = 0) {
  CriterionResult c{"P1", "Property suites (norm, CGF duality, distribution, closed sum, collapse)"};
  const SystemSpec spec{1600};

  // norm preservation across regimes
  {
    double worst = 0.0;
    const IntegratorOptions o;
    struct Case { double T; CDConfig cd; };
    for (const Case& cs : {Case{64, {0, CDForm::TermSum}}, Case{1e-6, {16, CDForm::TermSum}}, Case{1, {8, CDForm::TermSum}},
                           Case{0.01, {0, CDForm::Exact}}, Case{4, {4, CDForm::ClosedSum}}}) {
      QuenchProtocol p;
      p.T = cs.T;
      for (double k : {0.01, 0.1, 0.5, 1.5, 3.0}) worst = std::max(worst, propagate_mode(spec, p, cs.cd, k, o).norm_drift);
    }
    c.check(worst <= 100 * IntegratorOptions{}.rel_tol, "max norm drift = " + detail::num(worst) + " (<= 1e-8)");
  }

  // CGF derivative duality
  {
    double worst = 0.0, worst3 = 0.0;
    QuenchProtocol p;
    p.T = 2.0;
    for (int n : {0, 4, 16}) {
      const auto t = probability_table(spec, p, {n, CDForm::TermSum}, n == 0 ? Method::LZ : Method::AnalyticFast);
      const auto r = cumulants_from_probs(t);
      const auto fd = cumulants_from_cgf(t);
      worst = std::max({worst, std::abs(fd[0] / r.kappa[0] - 1), std::abs(fd[1] / r.kappa[1] - 1)});
      worst3 = std::max(worst3, std::abs(fd[2] - r.kappa[2]) / std::max(std::abs(r.kappa[2]), 1.0));
    }
    c.check(worst <= 1e-5, "cgf finite differences, q=1,2 max rel dev = " + detail::num(worst) + " (<= 1e-5)");
    c.check(worst3 <= 1e-3, "cgf finite differences, q=3 max rel dev = " + detail::num(worst3) + " (<= 1e-3)");
    const double h = 1e-4;
    const double d1 = (fast_cgf(h, 1) - fast_cgf(-h, 1)).imag() / (2 * h) / (2 * std::numbers::pi);
    const double d2 = -(fast_cgf(h, 1) - 2.0 * fast_cgf(0, 1) + fast_cgf(-h, 1)).real() / (h * h) / (2 * std::numbers::pi);
    c.check(detail::within_rel(d1, plateau_constant(1), 0.01), detail::rel_line("fast_cgf q=1 density", d1, plateau_constant(1), 0.01));
    c.check(detail::within_rel(d2, plateau_constant(2), 0.01), detail::rel_line("fast_cgf q=2 density", d2, plateau_constant(2), 0.01));
  }

  // distribution parity, normalization, moments
  {
    QuenchProtocol p;
    p.T = 1e-6;
    const auto t = probability_table(spec, p, {4, CDForm::TermSum}, Method::AnalyticFast);
    const auto d = distribution_exact(t, threads);
    const auto r = cumulants_from_probs(t);
    double total = 0.0;
    bool even = true;
    for (std::size_t i = 0; i < d.pmf.size(); ++i) {
      total += d.pmf[i];
      even = even && d.support[i] % 2 == 0;
    }
    c.check(even && std::abs(total - 1) <= 1e-10, "pmf on even support, sum - 1 = " + detail::num(total - 1));
    const double dm = std::abs(distribution_mean(d) / r.kappa[0] - 1), dv = std::abs(distribution_variance(d) / r.kappa[1] - 1);
    c.check(dm <= 1e-8 && dv <= 1e-8, "mean/variance vs kappa_1/kappa_2 rel dev = " + detail::num(dm) + ", " + detail::num(dv));
  }

  // closed vs termsum
  {
    double worst = 0.0;
    const auto ks = momentum_grid(1600);
    for (int n : {1, 2, 4, 8, 16, 32, 64})
      for (double k : ks) {
        const auto series = KrylovSeries::tfim(k, n, 1600);
        for (double g : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.5, 5.0, 50.0}) {
          const double a = series(g), b = cd_coefficient_closed(k, g, n);
          worst = std::max(worst, std::abs(a - b) / (1 + std::abs(a)));
        }
      }
    c.check(worst <= 1e-8, "closed vs termsum max |diff|/(1+|r|) = " + detail::num(worst) + " (<= 1e-8)");
  }

  // scaling collapse of ODE tables at T = 1e-6
  {
    QuenchProtocol p;
    p.T = 1e-6;
    std::vector<ProbabilityTable> tables;
    for (int n : {8, 16, 32}) tables.push_back(probability_table(spec, p, {n, CDForm::TermSum}, Method::ODE, {}, threads));
    const double dev = collapse_check(tables);
    c.check(dev <= 0.02, "collapse n=8,16,32 sup deviation = " + detail::num(dev) + " (<= 0.02)");
    double udev = 0.0;
    for (const auto& t : tables)
      for (std::size_t i = 0; i < t.momenta.size(); ++i) {
        const double x = t.meta.n * t.momenta[i];
        if (x >= 0.1 && x <= 10) udev = std::max(udev, std::abs(t.probs[i] - p_fast_universal(t.meta.n, t.momenta[i])));
      }
    c.check(udev <= 0.03, "collapse vs cos^2 Si(nk) sup deviation = " + detail::num(udev) + " (<= 0.03)");
  }
  return c;
}

struct CriterionEntry {
  std::string id;
  bool quick;
  std::function<CriterionResult(int)> run;
};

inline const std::vector<CriterionEntry>& criteria() {
  static const std::vector<CriterionEntry> all{
      {"A1", true, criterion_a1},   {"A2", false, criterion_a2}, {"A3", false, criterion_a3}, {"A4", true, criterion_a4},
      {"A5", false, criterion_a5},  {"A6", false, criterion_a6}, {"A7", false, criterion_a7}, {"A8", false, criterion_a8},
      {"A9", false, criterion_a9},  {"A10", true, criterion_a10}, {"P1", true, criterion_p1},
  };
  return all;
}

inline CriterionResult run_criterion(const std::string& id, int threads = 0) {
  for (const auto& e : criteria()) {
    if (e.id != id) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = e.run(threads);
    } catch (const std::exception& ex) {
      r = CriterionResult{id, "(aborted)"};
      r.check(false, std::string("exception: ") + ex.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }
  throw ValidationError("unknown criterion " + id);
}

inline ValidationReport validate_suite(ValidationLevel level, int threads = 0,
                                       const std::function<void(const CriterionResult&)>& on_result = {}) {
  ValidationReport rep;
  for (const auto& e : criteria()) {
    if (level == ValidationLevel::quick && !e.quick) continue;
    rep.results.push_back(run_criterion(e.id, threads));
    if (on_result) on_result(rep.results.back());
  }
  return rep;
}

inline std::string summary_line(const CriterionResult& r) {
  return std::string(r.passed ? "PASS " : "FAIL ") + r.id + "  " + r.title + "  [" + detail::fmt("%.1f s", r.seconds) + "]";
}

}  // namespace cdkink
