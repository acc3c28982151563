#pragma once

#include <CLI11.hpp>

#include <exception>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "io.hpp"
#include "kitaev.hpp"
#include "statistics.hpp"
#include "validation.hpp"

// Command-line front end. run_cli is the whole program so tests can drive it in-process.
namespace cdkink::cli {

enum ExitCode : int { ok = 0, runtime_failure = 1, config_error = 2, acceptance_failure = 3 };

struct RunConfig {
  std::string command;
  int L = 1600;
  double T = 1.0;
  double g0 = 100.0;
  int cd_order = 0;
  std::string cd_form = "termsum";
  std::string model = "TFIM";
  double alpha = 3.0;
  double beta = 3.0;
  std::string method = "ODE";
  int qmax = 4;
  std::string out;  // empty: standard output
  std::string format = "csv";
  int threads = 0;
  // sweep
  std::string vary = "T";
  std::vector<double> values;
  std::string range;  // lo:hi:count, log spaced
  bool with_dist = false;
  // validate
  std::string level = "quick";
  std::vector<std::string> only;
};

inline const std::map<std::string, Method>& method_names() {
  static const std::map<std::string, Method> m{{"ODE", Method::ODE},
                                               {"AnalyticFast", Method::AnalyticFast},
                                               {"AnalyticUniversal", Method::AnalyticUniversal},
                                               {"LZ", Method::LZ}};
  return m;
}

inline const std::map<std::string, CDForm>& form_names() {
  static const std::map<std::string, CDForm> m{
      {"termsum", CDForm::TermSum}, {"closed", CDForm::ClosedSum}, {"exact", CDForm::Exact}};
  return m;
}

inline const std::map<std::string, SweepVariable>& sweep_names() {
  static const std::map<std::string, SweepVariable> m{{"T", SweepVariable::T},
                                                      {"n", SweepVariable::n},
                                                      {"L", SweepVariable::L},
                                                      {"alpha", SweepVariable::alpha},
                                                      {"beta", SweepVariable::beta}};
  return m;
}

inline RunParams to_params(const RunConfig& c) {
  RunParams r;
  r.model = c.model == "LRKM" ? Model::LRKM : Model::TFIM;
  r.L = c.L;
  r.alpha = c.alpha;
  r.beta = c.beta;
  r.protocol.g0 = c.g0;
  r.protocol.T = c.T;
  r.cd = {c.cd_order, form_names().at(c.cd_form)};
  r.method = method_names().at(c.method);
  r.q_max = c.qmax;
  r.with_distribution = c.with_dist;
  r.threads = c.threads;
  return r;
}

// Up-front checks so that no computation starts on a bad configuration.
inline void validate(const RunConfig& c, const RunParams& r) {
  detail::require(c.qmax >= 1 && c.qmax <= 4, "qmax must be in 1..4");
  detail::require(c.threads >= 0, "threads must be >= 0");
  if (r.model == Model::LRKM) {
    cdkink::validate(LRKMSpec{r.L, r.alpha, r.beta});
  } else {
    SystemSpec s;
    s.L = r.L;
    cdkink::validate(s);
  }
  cdkink::validate(r.protocol);
  cdkink::validate(r.cd, r.L);
}

inline nlohmann::ordered_json meta_of(const RunParams& r) {
  nlohmann::ordered_json m;
  m["model"] = to_string(r.model);
  m["L"] = r.L;
  m["T"] = r.protocol.T;
  m["g0"] = r.protocol.g0;
  m["n"] = r.cd.order;
  m["cd_form"] = to_string(r.cd.form);
  m["method"] = to_string(r.method);
  if (r.model == Model::LRKM) {
    m["alpha"] = r.alpha;
    m["beta"] = r.beta;
  }
  return m;
}

inline io::Table cmd_probs(const RunParams& r) {
  const auto t = compute_table(r);
  io::Table out;
  out.columns = {"k", "p", "method", "L", "T", "n", "model"};
  out.meta = meta_of(r);
  for (std::size_t i = 0; i < t.momenta.size(); ++i)
    out.add({t.momenta[i], t.probs[i], to_string(r.method), long{r.L}, r.protocol.T, long{r.cd.order}, to_string(r.model)});
  return out;
}

inline io::Table cmd_cumulants(const RunParams& r) {
  const auto rep = cumulants_from_probs(compute_table(r), r.q_max);
  io::Table out;
  out.columns = {"q", "kappa", "density", "ratio_to_k1"};
  out.meta = meta_of(r);
  if (rep.n_ex) out.meta["n_ex"] = *rep.n_ex;
  for (int q = 1; q <= r.q_max; ++q) {
    const double k = rep.kappa[q - 1];
    out.add({long{q}, k, rep.densities[q - 1], rep.kappa[0] != 0.0 ? k / rep.kappa[0] : 0.0});
  }
  return out;
}

inline io::Table cmd_dist(const RunParams& r) {
  const auto t = compute_table(r);
  const auto rep = cumulants_from_probs(t, 2);
  const auto d = distribution_exact(t, r.threads);
  const auto g = gaussian_surrogate(rep.kappa[0], std::max(rep.kappa[1], 1e-300), d.support);
  io::Table out;
  out.columns = {"N", "p_exact", "p_gauss"};
  out.meta = meta_of(r);
  out.meta["total_variation"] = total_variation(d, g);
  for (std::size_t i = 0; i < d.support.size(); ++i) out.add({long{d.support[i]}, d.pmf[i], g.pmf[i]});
  return out;
}

inline std::vector<double> parse_range(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  detail::require(parts.size() == 3, "range must be lo:hi:count, got '" + s + "'");
  try {
    return log_space(std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2]));
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception&) {
    throw ValidationError("range must be lo:hi:count, got '" + s + "'");
  }
}

inline io::Table cmd_sweep(const RunConfig& c, const RunParams& r) {
  SweepSpec spec;
  spec.varying = sweep_names().at(c.vary);
  detail::require(c.values.empty() != c.range.empty(), "sweep needs exactly one of --values or --range");
  spec.values = c.values.empty() ? parse_range(c.range) : c.values;
  spec.fixed = r;
  cdkink::validate(spec);
  for (double x : spec.values) {
    const auto p = with_value(r, spec.varying, x);
    validate(c, p);
  }
  const auto res = run_sweep(spec);
  io::Table out;
  out.columns = {c.vary};
  for (int q = 1; q <= 4; ++q) out.columns.push_back("kappa" + std::to_string(q));
  for (int q = 1; q <= 4; ++q) out.columns.push_back("density" + std::to_string(q));
  out.columns.insert(out.columns.end(), {"ratio21", "ratio31", "mean", "variance", "tv_gaussian", "error"});
  out.meta = meta_of(r);
  out.meta["vary"] = c.vary;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& row : res.rows) {
    std::vector<io::Cell> cells{row.value};
    for (int q = 0; q < 4; ++q) cells.emplace_back(row.report && q < r.q_max ? row.report->kappa[q] : nan);
    for (int q = 0; q < 4; ++q) cells.emplace_back(row.report && q < r.q_max ? row.report->densities[q] : nan);
    cells.emplace_back(row.report ? row.report->ratio21 : nan);
    cells.emplace_back(row.report ? row.report->ratio31 : nan);
    cells.emplace_back(row.distribution ? row.distribution->mean : nan);
    cells.emplace_back(row.distribution ? row.distribution->variance : nan);
    cells.emplace_back(row.distribution ? row.distribution->tv_gaussian : nan);
    cells.emplace_back(row.error);
    out.add(std::move(cells));
  }
  return out;
}

inline io::Table cmd_kitaev(RunParams r) {
  r.model = Model::LRKM;
  const LRKMSpec s{r.L, r.alpha, r.beta};
  const auto ct = couplings(s);
  const auto t = compute_table(r);
  io::Table out;
  out.columns = {"k", "j_alpha", "d_beta", "p", "method", "L", "T", "n", "alpha", "beta"};
  out.meta = meta_of(r);
  out.meta["z"] = dynamical_exponent(r.alpha, r.beta);
  for (std::size_t i = 0; i < t.momenta.size(); ++i)
    out.add({ct.momenta[i], ct.j_alpha[i], ct.d_beta[i], t.probs[i], to_string(r.method), long{r.L}, r.protocol.T,
             long{r.cd.order}, r.alpha, r.beta});
  return out;
}

inline io::Table cmd_scales(const RunParams& r) {
  const double z = r.model == Model::LRKM ? dynamical_exponent(r.alpha, r.beta) : 1.0;
  const auto s = scales(r.cd.order, r.L, z);
  io::Table out;
  out.columns = {"quantity", "value"};
  out.meta = meta_of(r);
  out.add({std::string("k_n"), s.k_n});
  out.add({std::string("T_fast"), s.T_fast_cd});
  out.add({std::string("n_ad"), s.n_ad});
  out.add({std::string("z"), z});
  return out;
}

inline int cmd_validate(const RunConfig& c, std::ostream& os, std::ostream& err) {
  std::vector<std::string> ids = c.only;
  if (ids.empty())
    for (const auto& e : criteria())
      if (c.level == "full" || e.quick) ids.push_back(e.id);
  for (const auto& id : ids) {
    bool known = false;
    for (const auto& e : criteria()) known = known || e.id == id;
    detail::require(known, "unknown criterion " + id);
  }
  ValidationReport rep;
  for (const auto& id : ids) {
    rep.results.push_back(run_criterion(id, c.threads));
    err << summary_line(rep.results.back()) << '\n';
  }
  io::Table t;
  t.columns = {"id", "title", "passed", "seconds", "details"};
  t.meta["level"] = c.level;
  bool all = true;
  for (const auto& r : rep.results) {
    std::string details;
    for (const auto& d : r.details) details += (details.empty() ? "" : "; ") + d;
    t.add({r.id, r.title, std::string(r.passed ? "PASS" : "FAIL"), r.seconds, details});
    all = all && r.passed;
  }
  t.meta["passed"] = all;
  if (c.format == "json") io::write_json(t, os);
  else io::write_csv(t, os);
  return all ? ok : acceptance_failure;
}

inline void emit(const io::Table& t, const std::string& format, std::ostream& os) {
  if (format == "json") io::write_json(t, os);
  else io::write_csv(t, os);
}

// Writes to out, or to the --out file once the whole document is ready.
inline void deliver(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + c.out);
  f << text;
  if (!f.flush()) throw std::runtime_error("write failed: " + c.out);
}

inline void build_app(CLI::App& app, RunConfig& c, bool& dump) {
  app.description("Kink statistics of counterdiabatically driven quenches in free-fermion chains");
  app.set_config("--config", "", "Read options from a flat key = value file; flags override it");
  app.add_option("command", c.command, "probs | cumulants | dist | sweep | kitaev | scales | validate")
      ->required()
      ->configurable(false)
      ->check(CLI::IsMember({"probs", "cumulants", "dist", "sweep", "kitaev", "scales", "validate"}));
  app.add_option("--L", c.L, "Chain length (even)")->capture_default_str();
  app.add_option("--T", c.T, "Annealing time, |dg/dt| = 1/T")->capture_default_str();
  app.add_option("--g0", c.g0, "Initial field")->capture_default_str();
  app.add_option("--cd-order", c.cd_order, "Krylov CD order n (0 disables CD)")->capture_default_str();
  app.add_option("--cd-form", c.cd_form, "CD field form")
      ->capture_default_str()
      ->check(CLI::IsMember({"termsum", "closed", "exact"}));
  app.add_option("--model", c.model, "TFIM or LRKM")->capture_default_str()->check(CLI::IsMember({"TFIM", "LRKM"}));
  app.add_option("--alpha", c.alpha, "LRKM hopping exponent")->capture_default_str();
  app.add_option("--beta", c.beta, "LRKM pairing exponent")->capture_default_str();
  app.add_option("--method", c.method, "Probability method")
      ->capture_default_str()
      ->check(CLI::IsMember({"ODE", "AnalyticFast", "AnalyticUniversal", "LZ"}));
  app.add_option("--qmax", c.qmax, "Highest cumulant order (1..4)")->capture_default_str();
  app.add_option("--out", c.out, "Output file (default: standard output)");
  app.add_option("--format", c.format, "csv or json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", c.threads, "Worker threads (0: hardware concurrency)")->capture_default_str();
  app.add_option("--vary", c.vary, "sweep: parameter to vary")
      ->capture_default_str()
      ->check(CLI::IsMember({"T", "n", "L", "alpha", "beta"}));
  app.add_option("--values", c.values, "sweep: comma-separated values")->delimiter(',');
  app.add_option("--range", c.range, "sweep: lo:hi:count, log spaced");
  app.add_flag("--with-dist", c.with_dist, "sweep: also compute the exact distribution");
  app.add_option("--level", c.level, "validate: quick or full")
      ->capture_default_str()
      ->check(CLI::IsMember({"quick", "full"}));
  app.add_option("--only", c.only, "validate: comma-separated criterion ids")->delimiter(',');
  app.add_flag("--dump-config", dump, "Print the resolved configuration and exit")->configurable(false);
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  bool dump = false;
  CLI::App app{"cdkink"};
  build_app(app, c, dump);
  std::vector<const char*> argv{"cdkink"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return config_error;
  }
  if (dump) {
    // unset string and list options are left out so the dump parses back unchanged
    out << "# command: " << c.command << '\n';
    std::istringstream lines(app.config_to_str(true, false));
    for (std::string line; std::getline(lines, line);)
      if (!line.ends_with("=\"\"")) out << line << '\n';
    return ok;
  }
  try {
    if (c.command == "validate") {
      std::ostringstream doc;
      const int code = cmd_validate(c, doc, err);
      deliver(c, doc.str(), out);
      return code;
    }
    const RunParams r = to_params(c);
    validate(c, r);
    io::Table t;
    if (c.command == "probs") t = cmd_probs(r);
    else if (c.command == "cumulants") t = cmd_cumulants(r);
    else if (c.command == "dist") t = cmd_dist(r);
    else if (c.command == "sweep") t = cmd_sweep(c, r);
    else if (c.command == "kitaev") t = cmd_kitaev(r);
    else t = cmd_scales(r);
    std::ostringstream doc;
    emit(t, c.format, doc);
    deliver(c, doc.str(), out);
    return ok;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return config_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return runtime_failure;
  }
}

}  // namespace cdkink::cli
