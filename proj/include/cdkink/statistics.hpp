#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "analytic.hpp"
#include "dynamics.hpp"
#include "errors.hpp"

namespace cdkink {

struct CumulantReport {
  int q_max = 4;
  std::array<double, 4> kappa{};      // extensive (kink counts), index q-1
  std::array<double, 4> densities{};  // kappa / L
  double ratio21 = 0.0;
  double ratio31 = 0.0;
  std::optional<double> n_ex;  // KZ density (8 pi^2 T)^{-1/2}, no-CD tables only
  TableMeta meta;
};

struct KinkDistribution {
  std::vector<int> support;  // even kink numbers 0, 2, ..., 2M
  std::vector<double> pmf;
  std::vector<double> theta_grid;
};

// log P(theta) = sum_k log(1 + (e^{2 i theta} - 1) p_k), principal branch per
// mode. A vanishing factor returns -inf real part.
inline std::complex<double> cgf(const ProbabilityTable& t, double theta) {
  const std::complex<double> a = std::polar(1.0, 2.0 * theta) - 1.0;
  std::complex<double> sum = 0.0;
  for (double p : t.probs) {
    const std::complex<double> f = 1.0 + a * p;
    if (std::abs(f) == 0.0) return {-std::numeric_limits<double>::infinity(), 0.0};
    sum += std::log(f);
  }
  return sum;
}

// Cumulants of N = 2 sum_k n_k with independent Bernoulli n_k.
inline CumulantReport cumulants_from_probs(const ProbabilityTable& t, int q_max = 4) {
  detail::require(q_max >= 1 && q_max <= 4, "cumulants_from_probs: q_max must be in 1..4");
  detail::require(t.meta.L > 0, "cumulants_from_probs: table has no L");
  std::array<double, 4> s{};
  for (double p : t.probs) {
    const double v = p * (1.0 - p);
    s[0] += p;
    s[1] += v;
    s[2] += v * (1.0 - 2.0 * p);
    s[3] += v * (1.0 - 6.0 * v);
  }
  CumulantReport r;
  r.q_max = q_max;
  r.meta = t.meta;
  for (std::size_t q = 1; q <= static_cast<std::size_t>(q_max) && q <= s.size(); ++q) {
    r.kappa[q - 1] = std::ldexp(s[q - 1], static_cast<int>(q));
    r.densities[q - 1] = r.kappa[q - 1] / t.meta.L;
  }
  if (r.kappa[0] > 0) {
    r.ratio21 = q_max >= 2 ? r.kappa[1] / r.kappa[0] : 0.0;
    r.ratio31 = q_max >= 3 ? r.kappa[2] / r.kappa[0] : 0.0;
  }
  if (t.meta.n == 0 && t.meta.form != CDForm::Exact && t.meta.T > 0) r.n_ex = kz_density(t.meta.T);
  return r;
}

// Poisson-binomial pmf of the pair number m via the length-(M+1) DFT of the
// characteristic function; products are accumulated as sums of logs.
inline KinkDistribution distribution_exact(const ProbabilityTable& t, int threads = 1) {
  const std::size_t M = t.probs.size();
  detail::require(M >= 1, "distribution_exact: empty table");
  const std::size_t N = M + 1;
  const double two_pi = 2.0 * std::numbers::pi;

  std::vector<std::complex<double>> chi(N);
  parallel_for(N, threads, [&](std::size_t j) {
    const std::complex<double> a = std::polar(1.0, two_pi * j / N) - 1.0;
    double logmod = 0.0, arg = 0.0;
    bool zero = false;
    for (double p : t.probs) {
      const std::complex<double> f = 1.0 + a * p;
      const double m = std::abs(f);
      if (m == 0.0) {
        zero = true;
        break;
      }
      logmod += std::log(m);
      arg += std::arg(f);
    }
    chi[j] = zero ? 0.0 : std::polar(std::exp(logmod), std::remainder(arg, two_pi));
  });

  KinkDistribution d;
  d.theta_grid.resize(N);
  for (std::size_t j = 0; j < N; ++j) d.theta_grid[j] = 0.5 * two_pi * j / N;  // e^{2 i theta} = e^{2 pi i j/N}
  d.support.resize(N);
  d.pmf.resize(N);
  for (std::size_t m = 0; m < N; ++m) {
    std::complex<double> sum = 0.0;
    for (std::size_t j = 0; j < N; ++j) sum += std::polar(1.0, -two_pi * static_cast<double>((j * m) % N) / N) * chi[j];
    const double v = sum.real() / N;
    if (std::isnan(v)) throw std::runtime_error("distribution_exact: NaN in transform");
    if (v < -1e-12) throw std::runtime_error("distribution_exact: negative mass " + std::to_string(v));
    d.support[m] = static_cast<int>(2 * m);
    d.pmf[m] = std::max(v, 0.0);
  }
  double total = 0.0;
  for (double v : d.pmf) total += v;
  for (double& v : d.pmf) v /= total;
  return d;
}

// Discrete normal weights exp(-(N - kappa1)^2 / (2 kappa2)) on the given support.
inline KinkDistribution gaussian_surrogate(double kappa1, double kappa2, const std::vector<int>& support) {
  detail::require(kappa2 > 0.0, "gaussian_surrogate: kappa2 must be > 0");
  detail::require(!support.empty(), "gaussian_surrogate: empty support");
  KinkDistribution d;
  d.support = support;
  std::vector<double> e(support.size());
  double emax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < support.size(); ++i) {
    const double x = support[i] - kappa1;
    e[i] = -x * x / (2.0 * kappa2);
    emax = std::max(emax, e[i]);
  }
  double total = 0.0;
  d.pmf.resize(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) total += d.pmf[i] = std::exp(e[i] - emax);
  for (double& v : d.pmf) v /= total;
  return d;
}

inline double total_variation(const KinkDistribution& a, const KinkDistribution& b) {
  detail::require(a.support == b.support, "total_variation: supports differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.pmf.size(); ++i) s += std::abs(a.pmf[i] - b.pmf[i]);
  return std::min(1.0, 0.5 * s);
}

// kappa_1..3 from central differences of cgf at theta = 0, kappa_q = (-i d/dtheta)^q log P.
inline std::array<double, 3> cumulants_from_cgf(const ProbabilityTable& t, double h = 1e-4) {
  const auto f1 = cgf(t, h), fm1 = cgf(t, -h), f2 = cgf(t, 2 * h), fm2 = cgf(t, -2 * h);
  const std::complex<double> i(0.0, 1.0);
  const auto d1 = (f1 - fm1) / (2 * h);
  const auto d2 = (f1 - 2.0 * cgf(t, 0.0) + fm1) / (h * h);
  const auto d3 = (f2 - 2.0 * f1 + 2.0 * fm1 - fm2) / (2 * h * h * h);
  return {(-i * d1).real(), (-d2).real(), (i * d3).real()};
}

inline double distribution_mean(const KinkDistribution& d) {
  double m = 0.0;
  for (std::size_t i = 0; i < d.pmf.size(); ++i) m += d.support[i] * d.pmf[i];
  return m;
}

inline double distribution_variance(const KinkDistribution& d) {
  const double mu = distribution_mean(d);
  double v = 0.0;
  for (std::size_t i = 0; i < d.pmf.size(); ++i) v += (d.support[i] - mu) * (d.support[i] - mu) * d.pmf[i];
  return v;
}

}  // namespace cdkink
