#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "special.hpp"

namespace cdkink {

struct ScalingScales {
  double k_n;        // cutoff momentum, 1.05 / n
  double T_fast_cd;  // n^{2z}
  double n_ad;       // 1.05 L / (2 pi)
};

// Sudden-limit probability for the order-n Krylov CD, no approximation beyond g0 -> inf.
// Equal to sin^2(k/2) sin^2 S + cos^2(k/2) cos^2 S - 1/2 sin k sin 2S, S = Si(n, k).
inline double p_fast_exact(int n, double k) {
  detail::require(n >= 0, "p_fast_exact: n must be >= 0");
  const double c = std::cos(0.5 * k + special::si_partial(n, k));
  return c * c;
}

inline double p_fast_universal(int n, double k) {
  detail::require(n >= 1, "p_fast_universal: n must be >= 1");
  const double c = std::cos(special::si(n * k));
  return c * c;
}

namespace detail {

// Gauss-Legendre nodes on [0, X] with cos^2 Si(x) precomputed; the integrand
// of the fast-quench CGF oscillates with period pi and decays as 1/x^2.
struct FastQuadrature {
  static constexpr double x_max = 2000.0;
  static constexpr int panels = 2560;  // panel width ~0.78

  std::vector<double> weight;
  std::vector<double> p;

  FastQuadrature() {
    using rule = boost::math::quadrature::gauss<double, 20>;
    const auto& xs = rule::abscissa();
    const auto& ws = rule::weights();
    const double h = x_max / panels;
    for (int i = 0; i < panels; ++i) {
      const double mid = (i + 0.5) * h;
      auto add = [&](double t, double w) {
        const double c = std::cos(special::si(mid + 0.5 * h * t));
        weight.push_back(0.5 * h * w);
        p.push_back(c * c);
      };
      for (std::size_t j = 0; j < xs.size(); ++j) {
        if (xs[j] == 0.0) {
          add(0.0, ws[j]);
        } else {
          add(xs[j], ws[j]);
          add(-xs[j], ws[j]);
        }
      }
    }
  }

  // int_X^inf cos^2 Si(x) dx to O(X^-3).
  static double tail() { return 0.5 / x_max - std::sin(2.0 * x_max) / (4.0 * x_max * x_max); }

  static const FastQuadrature& get() {
    static const FastQuadrature q;
    return q;
  }
};

}  // namespace detail

// (1/n) int_0^inf log(1 + (e^{2 i theta} - 1) cos^2 Si(x)) dx. The per-site
// cumulant densities are (-i d/dtheta)^q of fast_cgf / (2 pi).
inline std::complex<double> fast_cgf(double theta, int n) {
  detail::require(n >= 1, "fast_cgf: n must be >= 1");
  detail::require(std::isfinite(theta), "fast_cgf: theta must be finite");
  const auto& q = detail::FastQuadrature::get();
  const std::complex<double> a = std::polar(1.0, 2.0 * theta) - 1.0;
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < q.p.size(); ++i) sum += q.weight[i] * std::log(1.0 + a * q.p[i]);
  sum += a * detail::FastQuadrature::tail();
  return sum / static_cast<double>(n);
}

// pi * c_q from the integral itself: 2^{q-1} int B_q(cos^2 Si(x)) dx with the
// Bernoulli-cumulant polynomials B_1 = p, B_2 = p(1-p), B_3 = p(1-p)(1-2p),
// B_4 = p(1-p)(1-6p+6p^2).
inline double fast_plateau_integral(int q) {
  detail::require(q >= 1 && q <= 4, "fast_plateau_integral: q must be in 1..4");
  const auto& quad = detail::FastQuadrature::get();
  double sum = 0.0;
  for (std::size_t i = 0; i < quad.p.size(); ++i) {
    const double p = quad.p[i];
    double b = p;
    if (q == 2) b = p * (1 - p);
    if (q == 3) b = p * (1 - p) * (1 - 2 * p);
    if (q == 4) b = p * (1 - p) * (1 - 6 * p + 6 * p * p);
    sum += quad.weight[i] * b;
  }
  // every B_q ~ p in the tail
  sum += detail::FastQuadrature::tail();
  return std::ldexp(sum, q - 1);
}

// Published plateau constants c_q, kappa_q^(n)(0) = c_q L / n.
inline double plateau_constant(int q) {
  constexpr std::array<double, 3> c{1.05, 0.86, 0.76};
  detail::require(q >= 1 && q <= 3, "plateau constant only tabulated for q = 1, 2, 3");
  return c[q - 1] / std::numbers::pi;
}

inline double fast_cumulant_plateau(int q, double n, int L) {
  detail::require(n >= 1, "fast_cumulant_plateau: n must be >= 1");
  return plateau_constant(q) * L / n;
}

// Without CD the sudden quench gives p_k = cos^2(k/2), whose continuum CGF is
// L log((1 + e^{i theta}) / 2): kappa_1 = L/2, kappa_{2m} = L (2^{2m}-1) B_{2m} / (2m),
// odd q >= 3 vanish.
inline double no_cd_sudden_cumulant(int q, int L) {
  detail::require(q >= 1 && q <= 16, "no_cd_sudden_cumulant: q must be in 1..16");
  if (q == 1) return 0.5 * L;
  if (q % 2 == 1) return 0.0;
  const double b = special::bernoulli_2q(q / 2);
  return L * (std::ldexp(1.0, q) - 1.0) * b / q;
}

// The general-q expression as printed alongside the sudden densities. Kept for
// reference: it gives L/16 at q = 1 and is not used anywhere.
inline double printed_bernoulli_cumulant(int q, int L) {
  detail::require(q >= 1 && q <= 8, "printed_bernoulli_cumulant: q must be in 1..8");
  const double f = std::ldexp(1.0, 2 * q);
  return 0.25 * L * (f - 1.0) / (0.5 * f * q) * special::bernoulli_2q(q);
}

// Leading finite-T correction to the CD plateau, c'_q L T n^-3 (density form).
inline double sudden_correction(int q, double T, double n, int L) {
  constexpr std::array<double, 3> c{-0.7, -1.5, -3.55};
  detail::require(q >= 1 && q <= 3, "sudden_correction: q must be in 1..3");
  detail::require(T >= 0, "sudden_correction: T must be >= 0");
  detail::require(n >= 1, "sudden_correction: n must be >= 1");
  return c[q - 1] * L * T / (n * n * n);
}

inline double kz_density(double T) {
  detail::require(T > 0, "kz_density: T must be > 0");
  return 1.0 / std::sqrt(8.0 * std::numbers::pi * std::numbers::pi * T);
}

inline double kz_cumulant(int q, double T, int L) {
  detail::require(q >= 1 && q <= 3, "kz_cumulant: q must be in 1..3");
  const double k1 = L * kz_density(T);
  if (q == 1) return k1;
  if (q == 2) return 2.0 * (1.0 - 1.0 / std::sqrt(2.0)) * k1;
  return 4.0 * (1.0 - 3.0 / std::sqrt(2.0) + 2.0 / std::sqrt(3.0)) * k1;
}

// Error-function interpolation between the CD plateau and the KZ law; both
// cumulants extensive so the T -> 0 and T -> inf limits are exact.
inline double crossover_ansatz(int q, double T, double n, int L) {
  const double kz = kz_cumulant(q, T, L);
  const double k0 = fast_cumulant_plateau(q, n, L);
  return kz * std::erf(std::sqrt(std::numbers::pi) * k0 / (2.0 * kz));
}

enum class ErfArgument { MainText, Supplement };
enum class PairPhase { Literal, KinkPair };

struct LzCgfOptions {
  ErfArgument erf_argument = ErfArgument::MainText;
  PairPhase pair_phase = PairPhase::Literal;
  double convergence_tol = 1e-10;
};

struct SeriesValue {
  std::complex<double> value;
  bool converged;
  double last_term;
};

// Landau-Zener modes truncated at k_c. Literal form:
//   -L n_ex sum_p (1 - e^{i theta})^p p^{-3/2} erf(sqrt(2 pi p) k_c).
// KinkPair uses e^{2 i theta} with prefactor L n_ex / 2, which is the exact
// series of sum_{k < k_c} log(1 + (e^{2 i theta} - 1) e^{-2 pi k^2 T}) when
// paired with the Supplement erf argument k_c sqrt(2 pi p T).
inline SeriesValue truncated_lz_cgf_cutoff(double theta, double T, double k_c, int L, int p_max,
                                           const LzCgfOptions& opt = {}) {
  detail::require(p_max >= 1, "truncated_lz_cgf: p_max must be >= 1");
  detail::require(T > 0, "truncated_lz_cgf: T must be > 0");
  detail::require(k_c > 0, "truncated_lz_cgf: cutoff must be > 0");
  const double nex = kz_density(T);
  const bool pair = opt.pair_phase == PairPhase::KinkPair;
  const std::complex<double> z = 1.0 - std::polar(1.0, pair ? 2.0 * theta : theta);
  const double pref = pair ? 0.5 * L * nex : L * nex;
  std::complex<double> zp = 1.0, sum = 0.0;
  double last = 0.0;
  for (int p = 1; p <= p_max; ++p) {
    zp *= z;
    const double arg = opt.erf_argument == ErfArgument::MainText
                           ? std::sqrt(2.0 * std::numbers::pi * p) * k_c
                           : k_c * std::sqrt(2.0 * std::numbers::pi * p * T);
    const std::complex<double> term = -pref * zp * std::pow(p, -1.5) * std::erf(arg);
    sum += term;
    last = std::abs(term);
  }
  const bool ok = last <= opt.convergence_tol * std::max(1.0, std::abs(sum));
  return {sum, ok, last};
}

inline SeriesValue truncated_lz_cgf(double theta, double T, int n, int L, int p_max, const LzCgfOptions& opt = {}) {
  detail::require(n >= 1, "truncated_lz_cgf: n must be >= 1");
  return truncated_lz_cgf_cutoff(theta, T, 1.05 / n, L, p_max, opt);
}

inline ScalingScales scales(int n, int L, double z = 1.0) {
  detail::require(n >= 1, "scales: n must be >= 1");
  detail::require(L >= 4, "scales: L must be >= 4");
  detail::require(z > 0, "scales: z must be > 0");
  return {1.05 / n, std::pow(static_cast<double>(n), 2.0 * z), 1.05 * L / (2.0 * std::numbers::pi)};
}

// Plateau cumulants scale as n^{-(d - D)}.
inline double plateau_scaling_exponent(const UniversalityParams& u) {
  validate(u);
  return -static_cast<double>(u.d - u.D);
}

// KZ defect scaling T^{-(d - D) nu / (1 + z nu)}.
inline double kz_scaling_exponent(const UniversalityParams& u) {
  validate(u);
  return -(u.d - u.D) * u.nu / (1.0 + u.z * u.nu);
}

}  // namespace cdkink
