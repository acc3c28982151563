#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"

namespace cdkink {

enum class Model { TFIM, LRKM };

struct UniversalityParams {
  int d = 1;   // spatial dimension
  int D = 0;   // defect dimension
  double z = 1.0;
  double nu = 1.0;
};

struct SystemSpec {
  int L = 1600;
  double J = 1.0;
  Model model = Model::TFIM;
  UniversalityParams universality{};
};

enum class Schedule { Linear };

// Linear ramp g(t) = g0 (1 - t/(g0 T)); |gdot| = 1/T, so T is the time spent
// per unit of g and p_k ~ exp(-2 pi k^2 T) holds as written.
struct QuenchProtocol {
  double g0 = 100.0;
  double T = 1.0;
  Schedule schedule = Schedule::Linear;

  double duration() const { return g0 * T; }
};

enum class CDForm { TermSum, ClosedSum, Exact };

struct CDConfig {
  int order = 0;  // 0 = no CD
  CDForm form = CDForm::TermSum;
};

struct ModeHamiltonian {
  double hz;
  double hx;
  double k;

  double gap() const { return std::hypot(hz, hx); }
};

struct FieldValue {
  double g;
  double gdot;
};

inline std::string to_string(Model m) { return m == Model::TFIM ? "TFIM" : "LRKM"; }

inline std::string to_string(CDForm f) {
  switch (f) {
    case CDForm::TermSum: return "termsum";
    case CDForm::ClosedSum: return "closed";
    case CDForm::Exact: return "exact";
  }
  return "?";
}

inline void validate(const UniversalityParams& u) {
  detail::require(u.d >= 1, "universality: d must be >= 1");
  detail::require(u.D >= 0 && u.D < u.d, "universality: need 0 <= D < d");
  detail::require(u.z > 0 && u.nu > 0, "universality: z and nu must be positive");
}

inline void validate(const SystemSpec& s) {
  detail::require(s.L >= 4, "L must be >= 4, got " + std::to_string(s.L));
  detail::require(s.L % 2 == 0, "L must be even, got " + std::to_string(s.L));
  detail::require(s.J > 0, "J must be positive");
  validate(s.universality);
}

inline void validate(const QuenchProtocol& p) {
  detail::require(std::isfinite(p.g0) && p.g0 > 1.0, "g0 must be > 1");
  detail::require(std::isfinite(p.T) && p.T > 0.0, "T must be > 0");
}

// Order n = L/2 already reproduces the exact CD on the antiperiodic grid:
// the m and L-m terms of the Krylov sum pair up, so larger n double counts.
inline void validate(const CDConfig& c, int L) {
  detail::require(c.order >= 0, "CD order must be >= 0");
  detail::require(c.order <= L / 2, "CD order must be <= L/2 = " + std::to_string(L / 2));
}

inline std::vector<double> momentum_grid(int L) {
  detail::require(L >= 4 && L % 2 == 0, "momentum_grid: L must be even and >= 4");
  std::vector<double> k(L / 2);
  for (int j = 1; j <= L / 2; ++j) k[j - 1] = (2.0 * j - 1.0) * std::numbers::pi / L;
  return k;
}

inline std::vector<double> momentum_grid(const SystemSpec& spec) {
  validate(spec);
  return momentum_grid(spec.L);
}

inline FieldValue field_at(const QuenchProtocol& p, double t) {
  validate(p);
  const double tf = p.duration();
  detail::require(t >= 0.0 && t <= tf, "field_at: t outside [0, duration]");
  if (t == tf) return {0.0, -1.0 / p.T};
  return {p.g0 * (1.0 - t / tf), -p.g0 / tf};
}

inline ModeHamiltonian mode_hamiltonian(double k, double g) {
  return {g - std::cos(k), std::sin(k), k};
}

// Truncated Krylov series r(g) = 1/2 sum_m c_m (g^{2m} + g^L) / (g^{m+1} (1 + g^L)).
// For the TFIM c_m = sin(k m); the long-range chain uses weighted sums of sines.
// g > 1 is evaluated through the exact symmetry r(g) = r(1/g) / g^2, so
// g^L never overflows.
class KrylovSeries {
public:
  KrylovSeries() = default;
  KrylovSeries(std::vector<double> coefficients, int L) : c_(std::move(coefficients)), L_(L) {}

  static KrylovSeries tfim(double k, int n, int L) {
    std::vector<double> c(n);
    for (int m = 1; m <= n; ++m) c[m - 1] = std::sin(k * m);
    return {std::move(c), L};
  }

  int order() const { return static_cast<int>(c_.size()); }
  int L() const { return L_; }
  const std::vector<double>& coefficients() const { return c_; }

  double operator()(double g) const {
    if (c_.empty()) return 0.0;
    if (g <= 1.0) return inner(g);
    const double h = 1.0 / g;
    return h * h * inner(h);
  }

private:
  // 0 <= g <= 1: terms g^{m-1} and g^{L-m-1}.
  double inner(double g) const {
    const double gl2 = std::pow(g, L_ - 2);
    const double gl = gl2 * g * g;
    double a = 1.0, sum = 0.0;
    if (gl2 > 0.0) {
      const double inv = 1.0 / g;
      double b = gl2;
      for (double c : c_) {
        sum += c * (a + b);
        a *= g;
        b *= inv;
      }
    } else {
      // g^{L-2} underflowed; g^{L-m-1} <= sqrt of it for m <= L/2
      for (double c : c_) {
        sum += c * a;
        a *= g;
      }
    }
    return 0.5 * sum / (1.0 + gl);
  }

  std::vector<double> c_;
  int L_ = 4;
};

inline double cd_coefficient_termsum(double k, double g, int n, int L) {
  detail::require(n >= 0, "cd_coefficient_termsum: n must be >= 0");
  detail::require(g >= 0.0, "cd_coefficient_termsum: g must be >= 0");
  if (n == 0 || k == std::numbers::pi) return 0.0;
  return KrylovSeries::tfim(k, n, L)(g);
}

// Geometric-sum form with g^L dropped.
inline double cd_coefficient_closed(double k, double g, int n) {
  detail::require(n >= 0, "cd_coefficient_closed: n must be >= 0");
  if (n == 0 || k == std::numbers::pi) return 0.0;
  const double den = 2.0 * (1.0 + g * g - 2.0 * g * std::cos(k));
  double num;
  if (g <= 1.0) {
    num = std::sin(k) - std::sin(k * (n + 1)) * std::pow(g, n) + std::sin(k * n) * std::pow(g, n + 1);
  } else {
    num = std::sin(k) - std::sin(k * (n + 1)) * std::pow(g, -n) + std::sin(k * n) * std::pow(g, -(n + 1));
  }
  return num / den;
}

inline double cd_coefficient_exact(double k, double g) {
  if (k == std::numbers::pi) return 0.0;
  return std::sin(k) / (2.0 * (1.0 + g * g - 2.0 * g * std::cos(k)));
}

}  // namespace cdkink
