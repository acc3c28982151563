#pragma once

#include <boost/numeric/odeint/stepper/controlled_runge_kutta.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "parallel.hpp"

namespace cdkink {

using complex = std::complex<double>;

struct Spinor {
  complex psi1{0.0, 0.0};
  complex psi2{1.0, 0.0};

  double norm2() const { return std::norm(psi1) + std::norm(psi2); }
};

struct IntegratorOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  long max_steps = 10'000'000;
  double initial_step = 1e-3;
  // Largest dynamic phase 2T int eps dg accumulated in one step (radians).
  double phase_per_step = 2.0;
  // Start late in the first-order superadiabatic state when the neglected
  // amplitude is provably below this; 0 always starts at g0.
  double adiabatic_start_tol = 1e-7;
};

inline void validate(const IntegratorOptions& o) {
  detail::require(o.rel_tol > 0 && o.abs_tol > 0, "integrator tolerances must be positive");
  detail::require(o.max_steps >= 1000, "max_steps must be >= 1000");
  detail::require(o.initial_step > 0, "initial_step must be positive");
  detail::require(o.phase_per_step > 0, "phase_per_step must be positive");
  detail::require(o.adiabatic_start_tol >= 0, "adiabatic_start_tol must be >= 0");
}

struct PropagationResult {
  Spinor final_state;
  double norm_drift = 0.0;
  long steps_taken = 0;
  double k = 0.0;
  double g_start = 0.0;  // field at which integration actually began
};

// CD coefficient along the path, r(g) = q / (-gdot).
class CdField {
public:
  enum class Kind { None, Krylov, Closed, Exact };

  static CdField none() { return {}; }

  static CdField krylov(KrylovSeries s) {
    CdField f;
    f.kind_ = s.order() == 0 ? Kind::None : Kind::Krylov;
    f.series_ = std::move(s);
    return f;
  }

  static CdField closed(double k, int n) {
    CdField f;
    f.kind_ = n == 0 ? Kind::None : Kind::Closed;
    f.k_ = k;
    f.n_ = n;
    return f;
  }

  // hx / (2 gap^2) for H = (g - offset) tau^z + coupling tau^x
  static CdField exact(double offset, double coupling) {
    CdField f;
    f.kind_ = Kind::Exact;
    f.a_ = offset;
    f.b_ = coupling;
    return f;
  }

  Kind kind() const { return kind_; }

  double operator()(double g) const {
    switch (kind_) {
      case Kind::None: return 0.0;
      case Kind::Krylov: return series_(g);
      case Kind::Closed: return cd_coefficient_closed(k_, g, n_);
      case Kind::Exact: {
        const double u = g - a_;
        return b_ / (2.0 * (u * u + b_ * b_));
      }
    }
    return 0.0;
  }

  // Width of the structure near g = 1 that the stepper must resolve.
  double unit_feature_width() const {
    if (kind_ == Kind::Krylov) return 1.0 / series_.L();
    if (kind_ == Kind::Closed) return 1.0 / (n_ + 1);
    return 0.0;
  }

private:
  Kind kind_ = Kind::None;
  KrylovSeries series_;
  double k_ = 0.0;
  int n_ = 0;
  double a_ = 0.0, b_ = 0.0;
};

// Mode Hamiltonian hz = g - offset, hx = coupling, plus the CD field.
struct TwoLevelDrive {
  double k = 0.0;
  double offset = 0.0;
  double coupling = 0.0;
  CdField cd;
};

inline TwoLevelDrive tfim_drive(double k, const CDConfig& cd, int L) {
  TwoLevelDrive d{k, std::cos(k), std::sin(k), CdField::none()};
  if (cd.form == CDForm::Exact) {
    d.cd = CdField::exact(d.offset, d.coupling);
  } else if (cd.order > 0) {
    d.cd = cd.form == CDForm::ClosedSum ? CdField::closed(k, cd.order) : CdField::krylov(KrylovSeries::tfim(k, cd.order, L));
  }
  return d;
}

// |<e(H)|psi>|^2 for the excited eigenvector of hz tau^z + hx tau^x.
inline double excited_overlap(const Spinor& s, double hz, double hx) {
  detail::require(hz != 0.0 || hx != 0.0, "excited_overlap: degenerate (zero-gap) Hamiltonian");
  const double half = 0.5 * std::atan2(hx, hz);
  return std::norm(std::cos(half) * s.psi1 + std::sin(half) * s.psi2);
}

inline double clamp_probability(double p) {
  if (!(p >= -1e-9 && p <= 1.0 + 1e-9)) throw std::runtime_error("probability " + std::to_string(p) + " outside [0,1]");
  return std::clamp(p, 0.0, 1.0);
}

// Projection on the excited Bogoliubov state of H_k(g_final); at g_final = 0
// this is |sin(k/2) psi1 + cos(k/2) psi2|^2.
inline double excitation_probability(const Spinor& s, double k, double g_final = 0.0) {
  detail::require(std::abs(s.norm2() - 1.0) <= 1e-6, "excitation_probability: spinor is not normalized");
  const auto h = mode_hamiltonian(k, g_final);
  return clamp_probability(excited_overlap(s, h.hz, h.hx));
}

namespace detail {

struct AdiabaticFrame {
  double a, b, T;

  double gap(double g) const { return std::hypot(g - a, b); }

  // Lambda(g) = 2T int eps dg, antiderivative.
  double phase(double g) const {
    const double u = g - a;
    if (b == 0.0) return T * u * std::abs(u);
    return T * (u * gap(g) + b * b * std::asinh(u / std::abs(b)));
  }

  // Nonadiabatic coupling w = r + phi'/2, phi = atan2(b, g - a).
  double coupling(const CdField& cd, double g) const {
    const double u = g - a;
    return cd(g) - 0.5 * b / (u * u + b * b);
  }
};

// Upper bound on the amplitude neglected by starting at G in the first-order
// superadiabatic state (coupling magnitude W, derivative W', Lambda' = 2 T eps).
inline double superadiabatic_error(const AdiabaticFrame& f, const CdField& cd, double G, double g0) {
  auto W = [&](double g) {
    const double e = f.gap(g), x = 1.0 / g;
    const double r = cd.kind() == CdField::Kind::None ? 0.0 : x * x / (1.0 - x) + std::abs(f.b) / (2 * e * e);
    return std::abs(f.b) / (2 * e * e) + r;
  };
  auto Wp = [&](double g) {
    const double e = f.gap(g), x = 1.0 / g;
    const double r = cd.kind() == CdField::Kind::None ? 0.0 : x * x * x * (2 - x) / ((1 - x) * (1 - x)) + std::abs(f.b) / (e * e * e);
    return std::abs(f.b) / (e * e * e) + r;
  };
  const double lp = 2 * f.T * f.gap(G);
  const double c1 = W(G) / (2 * lp);
  const double interior = (Wp(G) / (2 * lp) + W(G) * 2 * f.T / (2 * lp * lp)) / (2 * lp) + c1 * c1;
  const double boundary = W(g0) / (2 * 2 * f.T * f.gap(g0));
  return interior + boundary;
}

}  // namespace detail

// Field at which propagation starts: g0, or the smallest G >= 2 (on a 2% grid)
// where the superadiabatic start is accurate to opts.adiabatic_start_tol.
inline double adiabatic_start_field(const TwoLevelDrive& d, const QuenchProtocol& p, const IntegratorOptions& o) {
  if (o.adiabatic_start_tol <= 0.0) return p.g0;
  const detail::AdiabaticFrame f{d.offset, d.coupling, p.T};
  const double gmin = std::max(2.0, d.offset + std::abs(d.coupling) + 1.0);
  for (double G = gmin; G < p.g0; G *= 1.02)
    if (detail::superadiabatic_error(f, d.cd, G, p.g0) <= o.adiabatic_start_tol) return G;
  return p.g0;
}

// Integrates i dpsi/dg = [-2T (hz tau^z + hx tau^x) - r(g) tau^y] psi from the
// ground state at g0 down to g = 0. Internally the amplitudes c are taken in
// the instantaneous eigenbasis with the dynamic phase removed, which keeps the
// step count bounded by the phase cap instead of the lab-frame oscillation.
inline PropagationResult propagate(const TwoLevelDrive& d, const QuenchProtocol& p, const IntegratorOptions& o = {}) {
  namespace ode = boost::numeric::odeint;
  using State = std::array<complex, 2>;
  validate(p);
  validate(o);
  detail::require(d.coupling != 0.0 || d.offset < 0.0 || d.offset > p.g0, "propagate: gap closes on the path");

  const detail::AdiabaticFrame f{d.offset, d.coupling, p.T};
  const double G = adiabatic_start_field(d, p, o);
  const double lam0 = f.phase(G);

  State c{complex(0.0), complex(1.0)};
  if (G < p.g0) {
    const complex c1 = complex(0.0, 1.0) * f.coupling(d.cd, G) / (4.0 * p.T * f.gap(G));
    c = {c1, complex(std::sqrt(1.0 - std::norm(c1)), 0.0)};
  }

  // s = G - g runs forward.
  auto rhs = [&](const State& x, State& dx, double s) {
    const double g = G - s;
    const double w = f.coupling(d.cd, g);
    const complex e = std::polar(1.0, 2.0 * (f.phase(g) - lam0));
    dx[0] = -w * std::conj(e) * x[1];
    dx[1] = w * e * x[0];
  };

  const double feature_b = std::abs(d.coupling);
  const double unit_w = d.cd.unit_feature_width();
  auto cap = [&](double g) {
    double h = std::min(1.0, 0.2 * std::max(feature_b, std::abs(g - d.offset)));
    if (unit_w > 0.0) h = std::min(h, 0.2 * std::max(unit_w, std::abs(g - 1.0)));
    return std::min(h, o.phase_per_step / (2.0 * p.T * f.gap(g)));
  };

  // Local error is controlled at 1% of the requested tolerances: the norm loss
  // of accepted steps adds up linearly, and long adiabatic runs take ~1e5 steps.
  constexpr double local_factor = 0.01;
  auto stepper = ode::make_controlled(o.abs_tol * local_factor, o.rel_tol * local_factor, ode::runge_kutta_fehlberg78<State>());
  double s = 0.0, dt = o.initial_step, drift = 0.0;
  long accepted = 0, attempts = 0;
  const double drift_limit = 100.0 * o.rel_tol;
  while (s < G) {
    if (++attempts > o.max_steps)
      throw IntegrationError("step budget exhausted at k=" + std::to_string(d.k), d.k, accepted, drift);
    const double g = G - s;
    dt = std::min({dt, cap(g), G - s});
    // the closed form has a derivative kink at g = 1; never step across it
    if (unit_w > 0.0 && g > 1.0 && g - dt < 1.0) dt = g - 1.0;
    if (dt < 1e-14 * G) throw IntegrationError("step size underflow at k=" + std::to_string(d.k), d.k, accepted, drift);
    if (stepper.try_step(rhs, c, s, dt) != ode::success) continue;
    ++accepted;
    drift = std::abs(std::norm(c[0]) + std::norm(c[1]) - 1.0);
    if (drift > drift_limit)
      throw IntegrationError("norm drift " + std::to_string(drift) + " at k=" + std::to_string(d.k), d.k, accepted, drift);
  }

  // Back to the lab frame at g = 0.
  const double lam = f.phase(0.0) - lam0;
  const complex ue = std::polar(1.0, lam) * c[0];
  const complex ug = std::polar(1.0, -lam) * c[1];
  const double half = 0.5 * std::atan2(d.coupling, -d.offset);
  const double ch = std::cos(half), sh = std::sin(half);
  PropagationResult res;
  res.final_state = {ch * ue - sh * ug, sh * ue + ch * ug};
  res.norm_drift = drift;
  res.steps_taken = accepted;
  res.k = d.k;
  res.g_start = G;
  return res;
}

inline PropagationResult propagate_mode(const SystemSpec& spec, const QuenchProtocol& p, const CDConfig& cd, double k,
                                        const IntegratorOptions& o = {}) {
  validate(spec);
  validate(cd, spec.L);
  detail::require(k > 0.0 && k <= std::numbers::pi, "propagate_mode: k must be in (0, pi]");
  return propagate(tfim_drive(k, cd, spec.L), p, o);
}

inline double lz_probability(double k, double T) {
  detail::require(T > 0, "lz_probability: T must be > 0");
  return std::exp(-2.0 * std::numbers::pi * k * k * T);
}

enum class Method { ODE, AnalyticFast, AnalyticUniversal, LZ };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::ODE: return "ODE";
    case Method::AnalyticFast: return "AnalyticFast";
    case Method::AnalyticUniversal: return "AnalyticUniversal";
    case Method::LZ: return "LZ";
  }
  return "?";
}

struct TableMeta {
  int L = 0;
  double T = 0.0;
  int n = 0;
  Model model = Model::TFIM;
  Method method = Method::ODE;
  double g0 = 100.0;
  CDForm form = CDForm::TermSum;
  double alpha = 0.0;  // LRKM only
  double beta = 0.0;
};

struct ProbabilityTable {
  std::vector<double> momenta;
  std::vector<double> probs;
  TableMeta meta;
};

inline void validate(const ProbabilityTable& t) {
  detail::require(!t.momenta.empty() && t.momenta.size() == t.probs.size(), "probability table: length mismatch");
  for (std::size_t i = 0; i < t.probs.size(); ++i) {
    detail::require(t.probs[i] >= 0.0 && t.probs[i] <= 1.0, "probability table: p outside [0,1]");
    detail::require(i == 0 || t.momenta[i] > t.momenta[i - 1], "probability table: momenta not increasing");
  }
}

// Runs drive(i) through the ODE for every grid mode; failures carry the mode index.
template <class MakeDrive>
std::vector<double> ode_probabilities(const std::vector<double>& ks, const QuenchProtocol& p, const IntegratorOptions& o,
                                      int threads, MakeDrive&& make_drive) {
  std::vector<double> probs(ks.size());
  parallel_for(ks.size(), threads, [&](std::size_t i) {
    const TwoLevelDrive d = make_drive(i);
    try {
      const auto r = propagate(d, p, o);
      probs[i] = clamp_probability(excited_overlap(r.final_state, -d.offset, d.coupling));
    } catch (const IntegrationError& e) {
      throw IntegrationError(std::string(e.what()) + " (mode " + std::to_string(i) + ")", e.momentum(), e.steps(),
                             e.norm_drift(), static_cast<long>(i));
    }
  });
  return probs;
}

inline ProbabilityTable probability_table(const SystemSpec& spec, const QuenchProtocol& p, const CDConfig& cd, Method method,
                                          const IntegratorOptions& o = {}, int threads = 0) {
  validate(spec);
  validate(p);
  validate(cd, spec.L);
  detail::require(spec.model == Model::TFIM, "probability_table: use lrkm_probability_table for the long-range chain");
  ProbabilityTable t;
  t.momenta = momentum_grid(spec.L);
  t.meta = {spec.L, p.T, cd.order, spec.model, method, p.g0, cd.form};
  const auto& ks = t.momenta;
  switch (method) {
    case Method::ODE:
      t.probs = ode_probabilities(ks, p, o, threads, [&](std::size_t i) { return tfim_drive(ks[i], cd, spec.L); });
      break;
    case Method::AnalyticFast:
      detail::require(cd.form != CDForm::Exact, "AnalyticFast needs a finite CD order");
      for (double k : ks) t.probs.push_back(clamp_probability(p_fast_exact(cd.order, k)));
      break;
    case Method::AnalyticUniversal:
      detail::require(cd.order >= 1 && cd.form != CDForm::Exact, "AnalyticUniversal needs CD order >= 1");
      for (double k : ks) t.probs.push_back(clamp_probability(p_fast_universal(cd.order, k)));
      break;
    case Method::LZ:
      for (double k : ks) t.probs.push_back(lz_probability(k, p.T));
      break;
  }
  return t;
}

}  // namespace cdkink
