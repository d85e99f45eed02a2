#include "cweno/spatial.hpp"

#include <algorithm>
#include <cmath>

namespace cweno {

Eigen::VectorXd convolution_velocities(const PiecewiseReconstruction<double>& rec, const KernelSampleTable& samples,
                                       const NonlocalModel& model, Eigen::Index first, Eigen::Index count) {
  const Eigen::Index lo = first + samples.min_offset();
  const Eigen::Index hi = first + count - 1 + samples.max_offset();
  if (!rec.contains(lo) || !rec.contains(hi)) {
    throw RejectedInput("convolution_velocities: reconstruction does not cover cells " + std::to_string(lo) +
                        " .. " + std::to_string(hi));
  }
  // point values of every needed cell, one row per distinct position
  const Eigen::Index span = hi - lo + 1;
  const Eigen::Index n_points = static_cast<Eigen::Index>(samples.points.size());
  Eigen::MatrixXd values(n_points, span);
  for (Eigen::Index c = 0; c < span; ++c)
    for (Eigen::Index p = 0; p < n_points; ++p) values(p, c) = rec.evaluate(lo + c, samples.points[p]);

  Eigen::VectorXd out(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    const Eigen::Index base = first + i - lo;
    double acc = 0.0;
    for (const KernelSample& s : samples.samples) acc += s.coefficient() * values(s.point, base + s.cell_offset);
    out(i) = model.v(acc);
  }
  return out;
}

void limit(PiecewiseReconstruction<double>& rec, const ExtendedAverages& ext, const std::vector<double>& points,
           const BoundPair& bounds) {
  for (Eigen::Index j = rec.first_cell(); j < rec.end_cell(); ++j) {
    const LocalPolynomial<double> p = rec.cell(j);
    const ScaledPolynomial<double> scaled = scale(p, ext(j), bounds, cell_extrema(p, points));
    if (scaled.theta < 1.0) rec.set_cell(j, scaled.poly);
  }
}

SemiDiscretization::SemiDiscretization(NonlocalModel model, Grid grid, ReconstructionParams<double> params,
                                       LimiterMode limiter, BoundPair bounds)
    : model_(std::move(model)),
      grid_(grid),
      params_(std::move(params)),
      rule_(radau_rule<double>(params_.g + 1)),
      limiter_(limiter),
      bounds_(bounds) {
  grid_.validate();
  params_.validate();
  bounds_.validate();
  samples_ = kernel_samples(model_, grid_.h, rule_);
  const int reach = std::max(-samples_.min_offset(), samples_.max_offset());
  width_ = params_.g + reach + 2;
  if (grid_.bc == Boundary::periodic && width_ > grid_.n_cells) {
    throw RejectedInput("SemiDiscretization: grid too coarse for the kernel and stencil");
  }
}

PiecewiseReconstruction<double> SemiDiscretization::reconstruction(const Eigen::VectorXd& avg) const {
  const ExtendedAverages ext = ghost_extend(avg, grid_, width_);
  PiecewiseReconstruction<double> rec = reconstruct<double>(ext.values, width_, params_, grid_.h);
  if (limiter_ == LimiterMode::on) limit(rec, ext, samples_.points, bounds_);
  return rec;
}

Eigen::VectorXd SemiDiscretization::operator()(const Eigen::VectorXd& avg) const {
  const Eigen::Index n = grid_.n_cells;
  const PiecewiseReconstruction<double> rec = reconstruction(avg);
  // interfaces j+1/2 for j = -1 .. n-1
  const Eigen::VectorXd V = convolution_velocities(rec, samples_, model_, -1, n + 1);
  Eigen::VectorXd flux(n + 1);
  for (Eigen::Index i = 0; i <= n; ++i) flux(i) = V(i) * model_.g(rec.evaluate(i - 1, 1.0));
  return -(flux.tail(n) - flux.head(n)) / grid_.h;
}

Eigen::VectorXd rhs(const Eigen::VectorXd& avg, const NonlocalModel& model, const Grid& grid,
                    const ReconstructionParams<double>& params, LimiterMode limiter, const BoundPair& bounds) {
  return SemiDiscretization(model, grid, params, limiter, bounds)(avg);
}

double cfl_step(const NonlocalModel& model, double h, double gamma_R, double c_ssp, double safety) {
  if (!(h > 0.0 && gamma_R > 0.0 && c_ssp > 0.0 && safety > 0.0)) {
    throw RejectedInput("cfl_step: all constants must be positive");
  }
  const double denom = gamma_R * h * model.w_at_zero * model.norm_dv * model.norm_g + model.norm_v * model.norm_dg;
  return safety * c_ssp * gamma_R * h / denom;
}

double convergence_step(const NonlocalModel& model, double h, double safety) {
  if (!(h > 0.0 && safety > 0.0)) throw RejectedInput("convergence_step: h and safety must be positive");
  if (model.kind == ModelKind::traffic) return safety * h / (h * model.w_at_zero + 1.0);
  return safety * h / (3.0 * model.eta * model.w_at_zero + 1.0);
}

}  // namespace cweno
