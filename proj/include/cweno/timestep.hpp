#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "cweno/grid.hpp"

namespace cweno {

enum class Method { euler, tvdrk3, rk5, rk7, ssprk54, tsrk5, tsrk7 };

/// Method in stage-row form: the first `inputs` rows are given (u^n, or
/// u^{n-1} and u^n), then w_i = sum_j alpha(i,j) w_j + tau sum_j beta(i,j) F(w_j)
/// for j < i; the last row is the new solution.
struct IntegratorSpec {
  Method id = Method::euler;
  std::string name;
  int order = 1;
  int stages = 1;
  int inputs = 1;
  /// Radius of absolute monotonicity of the stored form (0 if not SSP).
  double ssp_coefficient = 0.0;
  /// Constant used in the bound-preserving step size.
  double cfl_constant = 0.0;
  Eigen::MatrixXd alpha;
  Eigen::MatrixXd beta;

  bool two_step() const { return inputs == 2; }
  bool is_ssp() const { return ssp_coefficient > 0.0; }
  Eigen::Index rows() const { return alpha.rows(); }
};

/// Parses a tableau file; the checksum line must match the content.
IntegratorSpec parse_tableau(const std::string& text);

/// The shipped tableaux, parsed and checked once.
const IntegratorSpec& integrator(Method id);
Method parse_method(const std::string& name);
std::string method_name(Method id);
/// 64-bit FNV-1a hash in lowercase hex.
std::string fnv1a64(const std::string& text);

using RhsFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

CellAverages euler_step(const CellAverages& u, double tau, const RhsFn& f);

CellAverages rk_step(const CellAverages& u, double tau, const RhsFn& f, const IntegratorSpec& spec);

/// Two-step update from u^{n-1} and u^n. `f_prev` may carry F(u^{n-1}) from
/// the previous step; `f_curr_out`, if given, receives F(u^n).
CellAverages tsrk_step(const CellAverages& prev, const CellAverages& curr, double tau, const RhsFn& f,
                       const IntegratorSpec& spec, const Eigen::VectorXd* f_prev = nullptr,
                       Eigen::VectorXd* f_curr_out = nullptr);

/// Advances from t to t + tau with ceil(tau / sub_tau) equal SSPRK(5,4) steps.
CellAverages bootstrap_first_step(const CellAverages& u0, double tau, const RhsFn& f, double sub_tau);

struct StepRecord {
  double t = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct IntegrationOptions {
  /// Substep for starting a two-step method; 0 means tau.
  double bootstrap_sub_tau = 0.0;
  /// Record min/max of the state after every step.
  bool record = false;
};

struct IntegrationResult {
  CellAverages state;
  double tau = 0.0;
  long steps = 0;
  std::vector<StepRecord> history;  // includes the initial state when recording
};

/// tau = T / ceil(T / tau_max), kept constant for the whole run.
double uniform_step(double T, double tau_max);

IntegrationResult integrate_to(const CellAverages& u0, double T, double tau_max, const RhsFn& f,
                               const IntegratorSpec& spec, const IntegrationOptions& options = {});

}  // namespace cweno
