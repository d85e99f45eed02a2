#pragma once

#include <Eigen/Dense>

#include "cweno/grid.hpp"
#include "cweno/limiter.hpp"
#include "cweno/model.hpp"
#include "cweno/quadrature.hpp"
#include "cweno/reconstruction.hpp"

namespace cweno {

enum class LimiterMode { off, on };

/// V_{j+1/2} = v(sum_s c_s rho_{j + offset_s}(y_s)) for j = first .. first+count-1.
Eigen::VectorXd convolution_velocities(const PiecewiseReconstruction<double>& rec, const KernelSampleTable& samples,
                                       const NonlocalModel& model, Eigen::Index first, Eigen::Index count);

/// Applies the scaling limiter to every reconstructed cell. `ext` supplies the
/// cell averages of the same (ghost-extended) index range.
void limit(PiecewiseReconstruction<double>& rec, const ExtendedAverages& ext, const std::vector<double>& points,
           const BoundPair& bounds);

/// The semi-discrete operator d/dt rho_bar = L(rho_bar) with its
/// h-dependent data built once.
class SemiDiscretization {
 public:
  SemiDiscretization(NonlocalModel model, Grid grid, ReconstructionParams<double> params,
                     LimiterMode limiter = LimiterMode::off, BoundPair bounds = {});

  Eigen::VectorXd operator()(const Eigen::VectorXd& avg) const;

  /// Limited (if enabled) reconstruction over all cells the scheme touches.
  PiecewiseReconstruction<double> reconstruction(const Eigen::VectorXd& avg) const;

  const NonlocalModel& model() const { return model_; }
  const Grid& grid() const { return grid_; }
  const ReconstructionParams<double>& params() const { return params_; }
  const QuadratureRule<double>& rule() const { return rule_; }
  const KernelSampleTable& samples() const { return samples_; }
  LimiterMode limiter() const { return limiter_; }
  const BoundPair& bounds() const { return bounds_; }
  Eigen::Index ghost_width() const { return width_; }

 private:
  NonlocalModel model_;
  Grid grid_;
  ReconstructionParams<double> params_;
  QuadratureRule<double> rule_;
  KernelSampleTable samples_;
  LimiterMode limiter_;
  BoundPair bounds_;
  Eigen::Index width_ = 0;
};

/// One-shot right-hand side; builds the operator on every call.
Eigen::VectorXd rhs(const Eigen::VectorXd& avg, const NonlocalModel& model, const Grid& grid,
                    const ReconstructionParams<double>& params, LimiterMode limiter = LimiterMode::off,
                    const BoundPair& bounds = {});

/// tau = safety c_ssp gamma_R h / (gamma_R h w(0) |v'| |g| + |v| |g'|).
double cfl_step(const NonlocalModel& model, double h, double gamma_R, double c_ssp, double safety);

/// Step used for the convergence runs: safety h / (h w(0) + 1) for traffic and
/// safety h / (3 eta w(0) + 1) for sedimentation.
double convergence_step(const NonlocalModel& model, double h, double safety = 0.9);

}  // namespace cweno
