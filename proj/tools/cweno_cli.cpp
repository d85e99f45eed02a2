// Command-line front end: run one configuration, a convergence family, or a
// bound audit. Options may also come from a key=value file (--config).

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include "cweno/cweno.hpp"

namespace fs = std::filesystem;
using namespace cweno;

namespace {

struct Flags {
  std::string problem = "smooth-traffic";
  std::string model, integrator = "auto", limiter, bounds = "auto", ref = "auto", out = ".", step = "auto";
  int kernel = 0, scheme = 3, n = 0, n_max = 3, n_min = 0, ref_n = 5;
  double eta = 0.0, h = 0.0, T = 0.0, safety = 0.9;
};

BoundPair parse_bounds(const std::string& s) {
  std::string t = s;
  for (char& c : t)
    if (c == ',') c = ' ';
  std::istringstream in(t);
  BoundPair b;
  if (!(in >> b.rho_m >> b.rho_M)) throw RejectedInput("--bounds expects 'auto' or 'lo,hi'");
  b.validate();
  return b;
}

RunConfig build_config(const Flags& f, const CLI::App& app) {
  RunConfig c = preset(parse_problem(f.problem));
  if (app.count("--model")) c.model = f.model;
  if (app.count("--kernel")) c.kernel = f.kernel;
  if (app.count("--eta")) c.eta = f.eta;
  c.scheme = f.scheme;
  c.integrator = f.integrator;
  if (app.count("--n")) {
    c.n = f.n;
    c.h.reset();
  }
  if (app.count("--h")) c.h = f.h;
  if (app.count("--T")) c.T = f.T;
  if (app.count("--limiter")) c.limiter = f.limiter == "on" ? LimiterMode::on : LimiterMode::off;
  c.safety = f.safety;
  if (f.bounds != "auto") c.bounds = parse_bounds(f.bounds);
  if (f.step == "convergence") c.step = StepRule::convergence;
  if (f.step == "ssp") c.step = StepRule::bound_preserving;
  c.validate();
  return c;
}

std::string level_tag(const RunConfig& c) {
  if (!c.h) return std::to_string(c.n);
  std::ostringstream s;
  s << "h" << *c.h;
  return s.str();
}

void write_run(const RunResult& r, const fs::path& out, const std::string& tag) {
  write_file_atomic((out / ("solution_" + tag + ".dat")).string(), solution_dat(r.grid, r.final.values));
}

int cmd_run(const RunConfig& c, const fs::path& out) {
  const RunResult r = run_experiment(c);
  write_run(r, out, level_tag(c));
  const AuditReport a = maxprinciple_audit(r.history, r.bounds);
  write_file_atomic((out / "audit.txt").string(), audit_text(a));
  std::cout << problem_name(c.problem) << " CWENO" << c.scheme << " " << method_name(resolve_integrator(c))
            << " cells=" << r.grid.n_cells << " tau=" << r.tau << " steps=" << r.steps << " min=" << a.global_min
            << " max=" << a.global_max << "\n";
  return 0;
}

int cmd_converge(const RunConfig& c, const Flags& f, const fs::path& out) {
  Eigen::VectorXd reference;
  if (f.ref == "auto") {
    const RunResult ref = reference_run(c, f.ref_n);
    reference = ref.final.values;
    write_file_atomic((out / ("reference_" + std::to_string(f.ref_n) + ".dat")).string(),
                      solution_dat(ref.grid, reference));
  } else {
    reference = read_solution_dat(f.ref);
  }
  const std::vector<ErrorReport> rows = convergence_table(c, f.n_min, f.n_max, reference);
  const std::string csv = table_csv(rows);
  write_file_atomic((out / "table.csv").string(), csv);
  for (int n = f.n_min; n <= f.n_max; ++n) {
    RunConfig cn = c;
    cn.n = n;
    cn.h.reset();
    write_run(run_experiment(cn), out, std::to_string(n));
  }
  std::cout << csv;
  return 0;
}

int cmd_audit(const RunConfig& c, const fs::path& out) {
  const RunResult r = run_experiment(c);
  const AuditReport a = maxprinciple_audit(r.history, r.bounds);
  const std::string text = audit_text(a);
  write_file_atomic((out / "audit.txt").string(), text);
  std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CWENO schemes for non-local conservation laws"};
  app.set_help_flag("--help", "print this help and exit");
  app.set_config("--config", "", "key=value file with default options");
  app.require_subcommand(1);
  Flags f;
  app.add_option("--problem", f.problem, "setup")
      ->check(CLI::IsMember({"nonsmooth", "smooth-traffic", "sedimentation", "max-principle", "zero"}));
  app.add_option("--model", f.model, "flux model")->check(CLI::IsMember({"traffic", "sedimentation"}));
  app.add_option("--kernel", f.kernel, "traffic kernel")->check(CLI::Range(1, 3));
  app.add_option("--eta", f.eta, "kernel length");
  app.add_option("--scheme", f.scheme, "CWENO order")->check(CLI::IsMember({3, 5, 7}));
  app.add_option("--integrator", f.integrator, "time integrator")
      ->check(CLI::IsMember({"auto", "euler", "tvdrk3", "rk5", "rk7", "ssprk54", "tsrk5", "tsrk7"}));
  auto* opt_h = app.add_option("--h", f.h, "mesh size");
  app.add_option("--n", f.n, "refinement index, h = 1/20 2^-n")->excludes(opt_h);
  app.add_option("--T", f.T, "final time");
  app.add_option("--limiter", f.limiter, "scaling limiter")->check(CLI::IsMember({"on", "off"}));
  app.add_option("--safety", f.safety, "CFL safety factor");
  app.add_option("--bounds", f.bounds, "auto or lo,hi");
  app.add_option("--step", f.step, "step rule")->check(CLI::IsMember({"auto", "convergence", "ssp"}));
  app.add_option("--ref", f.ref, "reference solution file or auto");
  app.add_option("--ref-n", f.ref_n, "refinement index of the computed reference");
  app.add_option("--n-min", f.n_min, "first refinement of the table");
  app.add_option("--n-max", f.n_max, "last refinement of the table");
  app.add_option("--out", f.out, "output directory");

  // options may follow the subcommand name
  app.fallthrough();
  auto* run = app.add_subcommand("run", "single run: solution and audit");
  auto* converge = app.add_subcommand("converge", "convergence table against a reference");
  auto* audit = app.add_subcommand("audit", "maximum-principle audit of one run");
  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig c = build_config(f, app);
    const fs::path out(f.out);
    fs::create_directories(out);
    if (run->parsed()) return cmd_run(c, out);
    if (converge->parsed()) return cmd_converge(c, f, out);
    if (audit->parsed()) return cmd_audit(c, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
