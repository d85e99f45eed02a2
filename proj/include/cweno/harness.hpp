#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "cweno/grid.hpp"
#include "cweno/limiter.hpp"
#include "cweno/model.hpp"
#include "cweno/spatial.hpp"
#include "cweno/timestep.hpp"

namespace cweno {

/// The four test setups.
enum class Problem { nonsmooth, smooth_traffic, sedimentation, max_principle, zero };

Problem parse_problem(const std::string& name);
std::string problem_name(Problem p);

enum class StepRule { automatic, convergence, bound_preserving };

struct RunConfig {
  Problem problem = Problem::smooth_traffic;
  std::string model = "traffic";  // traffic | sedimentation
  int kernel = 1;
  double eta = 0.2;
  int scheme = 3;                  // 3, 5 or 7
  std::string integrator = "auto";
  /// Refinement index: h = h0 2^{-n}. Ignored when h is set.
  int n = 0;
  std::optional<double> h;
  double T = 0.15;
  LimiterMode limiter = LimiterMode::off;
  double safety = 0.9;
  /// Explicit bounds; when empty they are taken from the initial averages.
  std::optional<BoundPair> bounds;
  StepRule step = StepRule::automatic;

  int g() const { return (scheme - 1) / 2; }
  void validate() const;
};

/// Defaults of each setup (domain, model, final time).
RunConfig preset(Problem p);

struct Domain {
  double a = 0.0, b = 1.0;
  Boundary bc = Boundary::periodic;
  double h0 = 0.05;  // coarsest mesh of the refinement family
};
Domain problem_domain(Problem p);

double initial_density(Problem p, double x);

/// Degree-17 smoothstep: S(0) = 0, S(1) = 1, derivatives 1..8 vanish at both ends.
double smoothstep17(double x);

NonlocalModel make_model(const RunConfig& cfg);
Grid make_grid(const RunConfig& cfg);
Method resolve_integrator(const RunConfig& cfg);

struct RunResult {
  RunConfig config;
  Grid grid;
  CellAverages initial;
  CellAverages final;
  BoundPair bounds;
  double tau = 0.0;
  long steps = 0;
  std::vector<StepRecord> history;
};

/// Step bound of the configuration and, for two-step methods, the start-up substep.
double time_step(const RunConfig& cfg, const NonlocalModel& model, double h);
double bootstrap_substep(const RunConfig& cfg, const NonlocalModel& model, double h, double tau);

RunResult run_experiment(const RunConfig& cfg);

struct ErrorReport {
  int n = 0;
  double h = 0.0;
  double l1 = 0.0;
  double linf = 0.0;
  std::optional<double> l1_rate;
  std::optional<double> linf_rate;
  double min = 0.0;
  double max = 0.0;
};

/// Block means of `fine` onto a grid `factor` times coarser.
Eigen::VectorXd restrict_averages(const Eigen::VectorXd& fine, Eigen::Index factor);

/// (L1, Linf) of coarse against the restricted reference.
std::pair<double, double> error_norms(const Eigen::VectorXd& coarse, const Eigen::VectorXd& reference,
                                      double coarse_h);

/// Runs cfg for n = n_min .. n_max and measures against the reference averages.
std::vector<ErrorReport> convergence_table(const RunConfig& cfg, int n_min, int n_max,
                                           const Eigen::VectorXd& reference);

/// Reference run: CWENO7 with the classical order-7 integrator at refinement n_ref.
RunResult reference_run(const RunConfig& cfg, int n_ref);

std::string table_csv(const std::vector<ErrorReport>& rows);

struct AuditReport {
  double global_min = 0.0;
  double global_max = 0.0;
  BoundPair bounds;
  double tolerance = 1e-12;
  long violations = 0;       // steps with an excursion beyond the tolerance
  std::optional<double> first_violation_time;

  bool ok() const { return violations == 0; }
};

AuditReport maxprinciple_audit(const std::vector<StepRecord>& history, const BoundPair& bounds,
                               double tolerance = 1e-12);
std::string audit_text(const AuditReport& report);

/// Two columns x, rho (cell centres).
std::string solution_dat(const Grid& grid, const Eigen::VectorXd& values);
Eigen::VectorXd read_solution_dat(const std::string& path);

/// Writes via a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace cweno
