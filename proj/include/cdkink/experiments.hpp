#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "kitaev.hpp"
#include "model.hpp"
#include "statistics.hpp"

namespace cdkink {

// Everything needed to produce one probability table.
struct RunParams {
  Model model = Model::TFIM;
  int L = 1600;
  double alpha = 3.0;  // LRKM only
  double beta = 3.0;
  QuenchProtocol protocol{};
  CDConfig cd{};
  Method method = Method::ODE;
  int q_max = 4;
  bool with_distribution = false;
  IntegratorOptions integrator{};
  int threads = 0;
};

inline ProbabilityTable compute_table(const RunParams& r) {
  if (r.model == Model::LRKM)
    return lrkm_probability_table({r.L, r.alpha, r.beta}, r.protocol, r.cd, r.method, r.integrator, r.threads);
  SystemSpec s;
  s.L = r.L;
  return probability_table(s, r.protocol, r.cd, r.method, r.integrator, r.threads);
}

enum class SweepVariable { T, n, L, alpha, beta };

inline std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::T: return "T";
    case SweepVariable::n: return "n";
    case SweepVariable::L: return "L";
    case SweepVariable::alpha: return "alpha";
    case SweepVariable::beta: return "beta";
  }
  return "?";
}

struct SweepSpec {
  SweepVariable varying = SweepVariable::T;
  std::vector<double> values;
  RunParams fixed{};
};

struct DistributionSummary {
  double mean = 0.0;
  double variance = 0.0;
  double tv_gaussian = 0.0;
};

struct SweepRow {
  double value = 0.0;
  RunParams params{};
  std::optional<CumulantReport> report;
  std::optional<DistributionSummary> distribution;
  std::string error;  // empty on success
  double wall_seconds = 0.0;
};

struct SweepResult {
  SweepVariable varying = SweepVariable::T;
  std::vector<SweepRow> rows;
};

struct FitWindow {
  std::size_t first = 0;
  std::size_t last = std::numeric_limits<std::size_t>::max();  // exclusive
};

struct FitResult {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
  FitWindow window{};
};

struct BreakdownEstimate {
  double T_star = 0.0;
  double plateau = 0.0;
};

// count points from lo to hi inclusive, evenly spaced in log.
inline std::vector<double> log_space(double lo, double hi, int count) {
  detail::require(lo > 0 && hi > lo && count >= 2, "log_space: need 0 < lo < hi and count >= 2");
  std::vector<double> v(count);
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) v[i] = lo * std::exp(step * i);
  v.back() = hi;
  return v;
}

inline RunParams with_value(RunParams p, SweepVariable v, double x) {
  switch (v) {
    case SweepVariable::T: p.protocol.T = x; break;
    case SweepVariable::n:
      detail::require(x == std::floor(x), "sweep over n needs integer values");
      p.cd.order = static_cast<int>(x);
      break;
    case SweepVariable::L:
      detail::require(x == std::floor(x), "sweep over L needs integer values");
      p.L = static_cast<int>(x);
      break;
    case SweepVariable::alpha: p.alpha = x; break;
    case SweepVariable::beta: p.beta = x; break;
  }
  return p;
}

inline void validate(const SweepSpec& s) {
  detail::require(!s.values.empty(), "sweep: values must be non-empty");
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    detail::require(s.values[i] > 0, "sweep: values must be positive");
    detail::require(i == 0 || s.values[i] > s.values[i - 1], "sweep: values must be strictly increasing");
  }
}

// Rows run in request order; a failing row records its error and the sweep continues.
inline SweepResult run_sweep(const SweepSpec& spec) {
  validate(spec);
  SweepResult out;
  out.varying = spec.varying;
  std::size_t failed = 0;
  for (double x : spec.values) {
    SweepRow row;
    row.value = x;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      row.params = with_value(spec.fixed, spec.varying, x);
      const auto table = compute_table(row.params);
      row.report = cumulants_from_probs(table, row.params.q_max);
      if (row.params.with_distribution) {
        const auto d = distribution_exact(table, row.params.threads);
        const auto gs = gaussian_surrogate(row.report->kappa[0], std::max(row.report->kappa[1], 1e-300), d.support);
        row.distribution = DistributionSummary{distribution_mean(d), distribution_variance(d), total_variation(d, gs)};
      }
    } catch (const std::exception& e) {
      row.error = e.what();
      ++failed;
    }
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.rows.push_back(std::move(row));
  }
  if (failed == out.rows.size()) throw std::runtime_error("sweep: all rows failed; first error: " + out.rows.front().error);
  return out;
}

// Least squares of log y on log x over [first, last).
inline FitResult fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys, FitWindow w = {}) {
  detail::require(xs.size() == ys.size(), "fit_power_law: length mismatch");
  w.last = std::min(w.last, xs.size());
  detail::require(w.first < w.last && w.last - w.first >= 3, "fit_power_law: need at least 3 points");
  const double n = static_cast<double>(w.last - w.first);
  double sx = 0, sy = 0;
  for (std::size_t i = w.first; i < w.last; ++i) {
    detail::require(xs[i] > 0 && ys[i] > 0, "fit_power_law: data must be positive");
    sx += std::log(xs[i]);
    sy += std::log(ys[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = w.first; i < w.last; ++i) {
    const double dx = std::log(xs[i]) - mx, dy = std::log(ys[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  detail::require(sxx > 0, "fit_power_law: x values are all equal");
  FitResult f;
  f.exponent = sxy / sxx;
  f.prefactor = std::exp(my - f.exponent * mx);
  f.r_squared = syy > 0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  f.window = w;
  return f;
}

// Plateau = median of the three smallest-T values; T* is where kappa_1 first
// falls to half of it, interpolated linearly in log T.
inline BreakdownEstimate breakdown_scale(const std::vector<double>& Ts, const std::vector<double>& kappa1) {
  detail::require(Ts.size() == kappa1.size() && Ts.size() >= 4, "breakdown_scale: need >= 4 points");
  for (std::size_t i = 1; i < Ts.size(); ++i) detail::require(Ts[i] > Ts[i - 1], "breakdown_scale: T must increase");
  std::array<double, 3> low{kappa1[0], kappa1[1], kappa1[2]};
  std::sort(low.begin(), low.end());
  const double plateau = low[1], half = 0.5 * plateau;
  detail::require(kappa1[0] > half, "breakdown_scale: sweep starts below half the plateau");
  for (std::size_t i = 1; i < Ts.size(); ++i) {
    if (kappa1[i] <= half) {
      const double a = std::log(Ts[i - 1]), b = std::log(Ts[i]);
      const double t = (kappa1[i - 1] - half) / (kappa1[i - 1] - kappa1[i]);
      return {std::exp(a + t * (b - a)), plateau};
    }
  }
  throw ValidationError("breakdown_scale: kappa_1 never falls to half the plateau");
}

inline BreakdownEstimate breakdown_scale(const SweepResult& s) {
  detail::require(s.varying == SweepVariable::T, "breakdown_scale: sweep must vary T");
  std::vector<double> Ts, ks;
  for (const auto& r : s.rows) {
    if (!r.report) continue;
    Ts.push_back(r.value);
    ks.push_back(r.report->kappa[0]);
  }
  return breakdown_scale(Ts, ks);
}

namespace detail {

inline double interpolate(const std::vector<double>& x, const std::vector<double>& y, double at) {
  const auto it = std::lower_bound(x.begin(), x.end(), at);
  if (it == x.begin()) return y.front();
  if (it == x.end()) return y.back();
  const std::size_t i = static_cast<std::size_t>(it - x.begin());
  const double t = (at - x[i - 1]) / (x[i] - x[i - 1]);
  return y[i - 1] + t * (y[i] - y[i - 1]);
}

}  // namespace detail

// Max pairwise |p_a(x) - p_b(x)| with x = n k, on a uniform grid in [x_lo, x_hi].
inline double collapse_check(const std::vector<ProbabilityTable>& tables, double x_lo = 0.1, double x_hi = 10.0,
                             int samples = 1000) {
  detail::require(tables.size() >= 2, "collapse_check: need at least 2 tables");
  const auto& m0 = tables.front().meta;
  std::vector<std::vector<double>> curves;
  for (const auto& t : tables) {
    detail::require(t.meta.L == m0.L && t.meta.T == m0.T && t.meta.model == m0.model && t.meta.method == m0.method &&
                        t.meta.g0 == m0.g0,
                    "collapse_check: tables differ in L, T, model, method or g0");
    detail::require(t.meta.n >= 1, "collapse_check: tables need CD order >= 1");
    std::vector<double> x(t.momenta.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = t.meta.n * t.momenta[i];
    detail::require(x.front() <= x_lo && x.back() >= x_hi, "collapse_check: table does not cover the x window");
    std::vector<double> c(samples);
    for (int i = 0; i < samples; ++i) c[i] = detail::interpolate(x, t.probs, x_lo + (x_hi - x_lo) * i / (samples - 1));
    curves.push_back(std::move(c));
  }
  double dev = 0.0;
  for (std::size_t a = 0; a < curves.size(); ++a)
    for (std::size_t b = a + 1; b < curves.size(); ++b)
      for (int i = 0; i < samples; ++i) dev = std::max(dev, std::abs(curves[a][i] - curves[b][i]));
  return dev;
}

}  // namespace cdkink
