#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "dynamics.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "special.hpp"

// Long-range Kitaev chain with power-law hopping (alpha) and pairing (beta).
namespace cdkink {

struct LRKMSpec {
  int L = 1024;
  double alpha = 3.0;
  double beta = 3.0;
};

inline void validate(const LRKMSpec& s) {
  detail::require(s.L >= 4 && s.L % 2 == 0, "LRKM: L must be even and >= 4");
  detail::require(s.alpha > 1.0 && s.beta > 1.0, "LRKM: alpha and beta must be > 1");
}

struct CouplingTable {
  std::vector<double> momenta;
  std::vector<double> j_alpha;
  std::vector<double> d_beta;
  double N_alpha = 0.0;
  double N_beta = 0.0;
};

// sum_{r=1}^{L/2} r^{-gamma}; normalizes j and d so that the short-range
// limit is exactly j = cos k, d = sin k.
inline double lrkm_normalization(double gamma, int L) {
  double s = 0.0;
  for (int r = L / 2; r >= 1; --r) s += std::pow(r, -gamma);
  return s;
}

inline double j_alpha(double k, const LRKMSpec& s) {
  double sum = 0.0;
  for (int r = s.L / 2; r >= 1; --r) sum += std::pow(r, -s.alpha) * std::cos(k * r);
  return sum / lrkm_normalization(s.alpha, s.L);
}

inline double d_beta(double k, const LRKMSpec& s) {
  if (k == std::numbers::pi) return 0.0;
  double sum = 0.0;
  for (int r = s.L / 2; r >= 1; --r) sum += std::pow(r, -s.beta) * std::sin(k * r);
  return sum / lrkm_normalization(s.beta, s.L);
}

inline CouplingTable couplings(const LRKMSpec& s) {
  validate(s);
  CouplingTable t;
  t.momenta = momentum_grid(s.L);
  t.N_alpha = lrkm_normalization(s.alpha, s.L);
  t.N_beta = lrkm_normalization(s.beta, s.L);
  const int R = s.L / 2;
  std::vector<double> wa(R + 1), wb(R + 1);
  for (int r = 1; r <= R; ++r) {
    wa[r] = std::pow(r, -s.alpha) / t.N_alpha;
    wb[r] = std::pow(r, -s.beta) / t.N_beta;
  }
  for (double k : t.momenta) {
    double j = 0.0, d = 0.0;
    for (int r = R; r >= 1; --r) {
      j += wa[r] * std::cos(k * r);
      d += wb[r] * std::sin(k * r);
    }
    t.j_alpha.push_back(j);
    t.d_beta.push_back(d);
  }
  return t;
}

// Range weights of the CD ansatz, r^{-beta-1} normalized to unit sum so that
// the sudden-limit phase reaches pi/2 for nk >> 1 and p_k -> 0 there.
inline std::vector<double> lrkm_cd_weights(const LRKMSpec& s) {
  validate(s);
  const int R = s.L / 2;
  std::vector<double> w(R + 1, 0.0);
  double norm = 0.0;
  for (int r = R; r >= 1; --r) norm += w[r] = std::pow(r, -s.beta - 1.0);
  for (double& x : w) x /= norm;
  return w;
}

// Krylov coefficients c_m = sum_r w_r sin(k r m); the order-n field is then the
// TFIM series with these in place of sin(k m).
inline KrylovSeries lrkm_series(double k, int n, const std::vector<double>& w, int L) {
  std::vector<double> c(n, 0.0);
  if (k != std::numbers::pi) {
    const int R = static_cast<int>(w.size()) - 1;
    for (int m = 1; m <= n; ++m) {
      double s = 0.0;
      for (int r = R; r >= 1; --r) s += w[r] * std::sin(k * r * m);
      c[m - 1] = s;
    }
  }
  return {std::move(c), L};
}

inline double lrkm_cd_order_n(double k, double g, int n, const LRKMSpec& s) {
  detail::require(n >= 0, "lrkm_cd_order_n: n must be >= 0");
  detail::require(g >= 0.0, "lrkm_cd_order_n: g must be >= 0");
  if (n == 0) return 0.0;
  return lrkm_series(k, n, lrkm_cd_weights(s), s.L)(g);
}

inline double lrkm_cd_exact(double k, double g, const LRKMSpec& s) {
  validate(s);
  const double j = j_alpha(k, s), d = d_beta(k, s);
  if (d == 0.0) return 0.0;
  return d / (2.0 * (d * d + (g - j) * (g - j)));
}

inline double lrkm_p_sudden(int n, double k, const LRKMSpec& s) {
  detail::require(n >= 1, "lrkm_p_sudden: n must be >= 1");
  const auto w = lrkm_cd_weights(s);
  double phase = 0.0;
  for (int r = static_cast<int>(w.size()) - 1; r >= 1; --r) phase += w[r] * special::si(r * n * k);
  const double c = std::cos(phase);
  return c * c;
}

// Projection on the excited state of H(0) = -j tau^z + d tau^x.
inline double lrkm_excited_projection(const Spinor& state, double j, double d) {
  detail::require(j != 0.0 || d != 0.0, "lrkm_excited_projection: degenerate gap (j = d = 0)");
  detail::require(std::abs(state.norm2() - 1.0) <= 1e-6, "lrkm_excited_projection: spinor is not normalized");
  return clamp_probability(excited_overlap(state, -j, d));
}

inline double lrkm_excited_projection(const Spinor& state, double k, const CouplingTable& t) {
  for (std::size_t i = 0; i < t.momenta.size(); ++i)
    if (std::abs(t.momenta[i] - k) <= 1e-12) return lrkm_excited_projection(state, t.j_alpha[i], t.d_beta[i]);
  throw ValidationError("lrkm_excited_projection: k is not on the table's grid");
}

// Gap exponent; overlapping printed conditions resolved with "alpha < beta < 2" first.
inline double dynamical_exponent(double alpha, double beta) {
  detail::require(alpha > 1.0 && beta > 1.0, "dynamical_exponent: alpha and beta must be > 1");
  if (alpha < beta && beta < 2.0) return beta - 1.0;
  if (alpha < std::min(2.0, beta)) return std::min(beta, alpha) - 1.0;
  return 1.0;
}

inline TwoLevelDrive lrkm_drive(double k, double j, double d, const CDConfig& cd, const std::vector<double>& w, int L) {
  TwoLevelDrive drive{k, j, d, CdField::none()};
  if (cd.form == CDForm::Exact) {
    drive.cd = CdField::exact(j, d);
  } else if (cd.order > 0) {
    drive.cd = CdField::krylov(lrkm_series(k, cd.order, w, L));
  }
  return drive;
}

inline ProbabilityTable lrkm_probability_table(const LRKMSpec& s, const QuenchProtocol& p, const CDConfig& cd, Method method,
                                               const IntegratorOptions& o = {}, int threads = 0) {
  validate(s);
  validate(p);
  validate(cd, s.L);
  detail::require(cd.form != CDForm::ClosedSum, "LRKM: closed-sum CD form is not defined");
  const auto t = couplings(s);
  ProbabilityTable out;
  out.momenta = t.momenta;
  out.meta = {s.L, p.T, cd.order, Model::LRKM, method, p.g0, cd.form, s.alpha, s.beta};
  switch (method) {
    case Method::ODE: {
      const auto w = lrkm_cd_weights(s);
      out.probs = ode_probabilities(t.momenta, p, o, threads, [&](std::size_t i) {
        return lrkm_drive(t.momenta[i], t.j_alpha[i], t.d_beta[i], cd, w, s.L);
      });
      break;
    }
    case Method::AnalyticUniversal: {
      detail::require(cd.order >= 1 && cd.form == CDForm::TermSum, "LRKM sudden formula needs CD order >= 1");
      out.probs.resize(t.momenta.size());
      parallel_for(t.momenta.size(), threads,
                   [&](std::size_t i) { out.probs[i] = clamp_probability(lrkm_p_sudden(cd.order, t.momenta[i], s)); });
      break;
    }
    default:
      throw ValidationError("LRKM tables support methods ODE and AnalyticUniversal");
  }
  return out;
}

}  // namespace cdkink
