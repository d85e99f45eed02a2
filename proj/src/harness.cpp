#include "cweno/harness.hpp"

#include <algorithm>
#include <array>
#include <tuple>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace cweno {

namespace {

const std::array<std::pair<Problem, const char*>, 5> kProblems{{{Problem::nonsmooth, "nonsmooth"},
                                                               {Problem::smooth_traffic, "smooth-traffic"},
                                                               {Problem::sedimentation, "sedimentation"},
                                                               {Problem::max_principle, "max-principle"},
                                                               {Problem::zero, "zero"}}};

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

}  // namespace

Problem parse_problem(const std::string& name) {
  for (const auto& [p, n] : kProblems)
    if (name == n) return p;
  throw RejectedInput("unknown problem '" + name + "'");
}

std::string problem_name(Problem p) {
  for (const auto& [q, n] : kProblems)
    if (q == p) return n;
  return "?";
}

void RunConfig::validate() const {
  if (scheme != 3 && scheme != 5 && scheme != 7) throw RejectedInput("config: scheme must be 3, 5 or 7");
  if (model != "traffic" && model != "sedimentation") throw RejectedInput("config: unknown model '" + model + "'");
  if (model == "traffic" && (kernel < 1 || kernel > 3)) throw RejectedInput("config: kernel must be 1, 2 or 3");
  if (!(eta > 0.0)) throw RejectedInput("config: eta must be positive");
  if (!(T > 0.0)) throw RejectedInput("config: T must be positive");
  if (!(safety > 0.0)) throw RejectedInput("config: safety must be positive");
  if (h && !(*h > 0.0)) throw RejectedInput("config: h must be positive");
  if (n < 0) throw RejectedInput("config: n must be non-negative");
  if (bounds) bounds->validate();
  if (integrator != "auto") parse_method(integrator);
  const Domain d = problem_domain(problem);
  const double cells = (d.b - d.a) / (h ? *h : d.h0 * std::ldexp(1.0, -n));
  if (std::abs(cells - std::round(cells)) > 1e-9 * cells)
    throw RejectedInput("config: h does not divide the domain into whole cells");
}

RunConfig preset(Problem p) {
  RunConfig c;
  c.problem = p;
  switch (p) {
    case Problem::nonsmooth:
      c.kernel = 3;
      c.eta = 0.1;
      c.T = 0.1;
      c.h = 1.0 / 800.0;
      break;
    case Problem::smooth_traffic:
      c.kernel = 1;
      c.eta = 0.2;
      c.T = 0.15;
      break;
    case Problem::sedimentation:
    case Problem::zero:
      c.model = "sedimentation";
      c.eta = 0.05;
      c.T = 0.04;
      break;
    case Problem::max_principle:
      c.kernel = 3;
      c.eta = 0.05;
      c.T = 0.05;
      c.limiter = LimiterMode::on;
      break;
  }
  return c;
}

Domain problem_domain(Problem p) {
  switch (p) {
    case Problem::nonsmooth:
    case Problem::smooth_traffic:
      return {-1.0, 1.0, Boundary::periodic, 0.05};
    case Problem::sedimentation:
    case Problem::zero:
      return {0.0, 1.0, Boundary::constant_extension, 0.05};
    case Problem::max_principle:
      return {0.0, 1.0, Boundary::periodic, 0.05};
  }
  return {};
}

double smoothstep17(double x) {
  x = std::clamp(x, 0.0, 1.0);
  // the alternating sum cancels badly near 1; use S(x) = 1 - S(1 - x) there
  if (x > 0.5) return 1.0 - smoothstep17(1.0 - x);
  constexpr int N = 8;
  double acc = 0.0;
  for (int k = 0; k <= N; ++k) acc += binomial(N + k, k) * binomial(2 * N + 1, N - k) * std::pow(-x, k);
  return std::pow(x, N + 1) * acc;
}

double initial_density(Problem p, double x) {
  switch (p) {
    case Problem::nonsmooth:
      return (x >= -0.5 && x <= 0.4) ? 0.95 : 0.05;
    case Problem::smooth_traffic:
      return 0.5 + 0.4 * std::sin(std::numbers::pi * x);
    case Problem::sedimentation:
      return 0.8 * std::pow(std::sin(std::numbers::pi * x), 10);
    case Problem::max_principle:
      if (x <= 0.125 || x >= 0.875) return 0.0;
      if (x < 0.375) return smoothstep17(4.0 * (x - 0.125));
      if (x <= 0.625) return 1.0;
      return smoothstep17(4.0 * (0.875 - x));
    case Problem::zero:
      return 0.0;
  }
  return 0.0;
}

NonlocalModel make_model(const RunConfig& cfg) {
  return cfg.model == "traffic" ? traffic_model(cfg.kernel, cfg.eta) : sedimentation_model(cfg.eta);
}

Grid make_grid(const RunConfig& cfg) {
  const Domain d = problem_domain(cfg.problem);
  const double h = cfg.h ? *cfg.h : d.h0 * std::ldexp(1.0, -cfg.n);
  const auto cells = static_cast<Eigen::Index>(std::llround((d.b - d.a) / h));
  return uniform_grid(d.a, d.b, cells, d.bc, 0.0);
}

namespace {

StepRule effective_rule(const RunConfig& cfg) {
  if (cfg.step != StepRule::automatic) return cfg.step;
  return cfg.problem == Problem::max_principle ? StepRule::bound_preserving : StepRule::convergence;
}

// refinement index of h relative to the coarsest mesh (may be fractional)
double refinement_level(const RunConfig& cfg, double h) {
  return std::log2(problem_domain(cfg.problem).h0 / h);
}

}  // namespace

Method resolve_integrator(const RunConfig& cfg) {
  if (cfg.integrator != "auto") return parse_method(cfg.integrator);
  const bool ssp = effective_rule(cfg) == StepRule::bound_preserving;
  switch (cfg.scheme) {
    case 3:
      return Method::tvdrk3;
    case 5:
      return ssp ? Method::tsrk5 : Method::rk5;
    default:
      return ssp ? Method::tsrk7 : Method::rk7;
  }
}

double time_step(const RunConfig& cfg, const NonlocalModel& model, double h) {
  if (effective_rule(cfg) == StepRule::convergence) return convergence_step(model, h, cfg.safety);
  const IntegratorSpec& spec = integrator(resolve_integrator(cfg));
  if (!spec.is_ssp()) throw RejectedInput("config: bound-preserving step needs an SSP integrator");
  const double gamma = 1.0 / ((cfg.g() + 1) * (cfg.g() + 1));
  return cfl_step(model, h, gamma, spec.cfl_constant, cfg.safety);
}

double bootstrap_substep(const RunConfig& cfg, const NonlocalModel& model, double h, double tau) {
  const double gamma = 1.0 / ((cfg.g() + 1) * (cfg.g() + 1));
  const double level = std::max(0.0, refinement_level(cfg, h));
  const double base = 1.35 * cfl_step(model, h, gamma, 1.0, 1.0);
  return std::min(tau, base * std::exp2(-(2 * cfg.g() + 1) * level / 4.0));
}

RunResult run_experiment(const RunConfig& cfg) {
  cfg.validate();
  RunResult res;
  res.config = cfg;
  res.grid = make_grid(cfg);
  const NonlocalModel model = make_model(cfg);
  const ReconstructionParams<double> params = default_params<double>(cfg.g());
  const QuadratureRule<double> rule = radau_rule<double>(cfg.g() + 1);
  const Problem p = cfg.problem;
  res.initial.values = initial_cell_averages([p](double x) { return initial_density(p, x); }, res.grid, rule);
  res.initial.t = 0.0;
  if (cfg.bounds) {
    res.bounds = *cfg.bounds;
  } else {
    res.bounds = {res.initial.values.minCoeff(), res.initial.values.maxCoeff()};
  }

  const SemiDiscretization op(model, res.grid, params, cfg.limiter, res.bounds);
  const RhsFn f = [&op](const Eigen::VectorXd& u) { return op(u); };
  const IntegratorSpec& spec = integrator(resolve_integrator(cfg));
  const double tau_max = time_step(cfg, model, res.grid.h);
  IntegrationOptions opts;
  opts.record = true;
  if (spec.two_step()) opts.bootstrap_sub_tau = bootstrap_substep(cfg, model, res.grid.h, uniform_step(cfg.T, tau_max));
  IntegrationResult out = integrate_to(res.initial, cfg.T, tau_max, f, spec, opts);
  res.final = std::move(out.state);
  res.tau = out.tau;
  res.steps = out.steps;
  res.history = std::move(out.history);
  return res;
}

Eigen::VectorXd restrict_averages(const Eigen::VectorXd& fine, Eigen::Index factor) {
  if (factor < 1 || fine.size() % factor != 0) throw RejectedInput("restrict_averages: grids are not nested");
  const Eigen::Index n = fine.size() / factor;
  Eigen::VectorXd out(n);
  for (Eigen::Index j = 0; j < n; ++j) out(j) = fine.segment(j * factor, factor).mean();
  return out;
}

std::pair<double, double> error_norms(const Eigen::VectorXd& coarse, const Eigen::VectorXd& reference,
                                      double coarse_h) {
  if (coarse.size() == 0 || reference.size() % coarse.size() != 0)
    throw RejectedInput("error_norms: grids are not nested");
  const Eigen::Index factor = reference.size() / coarse.size();
  if ((factor & (factor - 1)) != 0) throw RejectedInput("error_norms: refinement factor is not a power of two");
  const Eigen::VectorXd diff = (coarse - restrict_averages(reference, factor)).cwiseAbs();
  return {coarse_h * diff.sum(), diff.maxCoeff()};
}

RunResult reference_run(const RunConfig& cfg, int n_ref) {
  RunConfig ref = cfg;
  ref.scheme = 7;
  ref.integrator = "auto";
  ref.n = n_ref;
  ref.h.reset();
  return run_experiment(ref);
}

std::vector<ErrorReport> convergence_table(const RunConfig& cfg, int n_min, int n_max,
                                           const Eigen::VectorXd& reference) {
  if (n_max <= n_min) throw RejectedInput("convergence_table: need at least two refinements");
  std::vector<ErrorReport> rows;
  for (int n = n_min; n <= n_max; ++n) {
    RunConfig c = cfg;
    c.n = n;
    c.h.reset();
    const RunResult r = run_experiment(c);
    ErrorReport e;
    e.n = n;
    e.h = r.grid.h;
    std::tie(e.l1, e.linf) = error_norms(r.final.values, reference, r.grid.h);
    e.min = r.final.values.minCoeff();
    e.max = r.final.values.maxCoeff();
    for (const StepRecord& s : r.history) {
      e.min = std::min(e.min, s.min);
      e.max = std::max(e.max, s.max);
    }
    if (!rows.empty()) {
      e.l1_rate = std::log2(rows.back().l1 / e.l1);
      e.linf_rate = std::log2(rows.back().linf / e.linf);
    }
    rows.push_back(e);
  }
  return rows;
}

std::string table_csv(const std::vector<ErrorReport>& rows) {
  std::string out = "n,L1,L1_rate,Linf,Linf_rate\n";
  for (const ErrorReport& e : rows) {
    out += std::to_string(e.n) + "," + fmt("%.6e", e.l1) + "," + (e.l1_rate ? fmt("%.2f", *e.l1_rate) : "") + "," +
           fmt("%.6e", e.linf) + "," + (e.linf_rate ? fmt("%.2f", *e.linf_rate) : "") + "\n";
  }
  return out;
}

AuditReport maxprinciple_audit(const std::vector<StepRecord>& history, const BoundPair& bounds, double tolerance) {
  if (history.empty()) throw RejectedInput("maxprinciple_audit: empty history");
  AuditReport a;
  a.bounds = bounds;
  a.tolerance = tolerance;
  a.global_min = history.front().min;
  a.global_max = history.front().max;
  for (const StepRecord& s : history) {
    a.global_min = std::min(a.global_min, s.min);
    a.global_max = std::max(a.global_max, s.max);
    if (s.min < bounds.rho_m - tolerance || s.max > bounds.rho_M + tolerance) {
      ++a.violations;
      if (!a.first_violation_time) a.first_violation_time = s.t;
    }
  }
  return a;
}

std::string audit_text(const AuditReport& a) {
  std::string out;
  out += "bounds " + fmt("%.17g", a.bounds.rho_m) + " " + fmt("%.17g", a.bounds.rho_M) + "\n";
  out += "global_min " + fmt("%.17g", a.global_min) + "\n";
  out += "global_max " + fmt("%.17g", a.global_max) + "\n";
  out += "tolerance " + fmt("%.3g", a.tolerance) + "\n";
  out += "violating_steps " + std::to_string(a.violations) + "\n";
  if (a.first_violation_time) out += "first_violation_t " + fmt("%.17g", *a.first_violation_time) + "\n";
  out += std::string("status ") + (a.ok() ? "ok" : "VIOLATED") + "\n";
  return out;
}

std::string solution_dat(const Grid& grid, const Eigen::VectorXd& values) {
  std::string out;
  for (Eigen::Index j = 0; j < values.size(); ++j)
    out += fmt("%.17g", grid.center(j)) + " " + fmt("%.17g", values(j)) + "\n";
  return out;
}

Eigen::VectorXd read_solution_dat(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RejectedInput("cannot open " + path);
  std::vector<double> vals;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double x, r;
    if (!(ls >> x >> r)) throw RejectedInput("malformed line in " + path + ": " + line);
    vals.push_back(r);
  }
  return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw RejectedInput("cannot write " + tmp);
    out << content;
    if (!out) throw RejectedInput("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace cweno
