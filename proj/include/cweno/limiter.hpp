#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "cweno/errors.hpp"
#include "cweno/polynomial.hpp"

namespace cweno {

/// Global solution bounds [rho_m, rho_M].
struct BoundPair {
  double rho_m = 0.0;
  double rho_M = 1.0;

  void validate() const {
    if (!(rho_m <= rho_M)) throw RejectedInput("bounds: need rho_m <= rho_M");
  }
  bool contains(double x, double tol = 0.0) const { return x >= rho_m - tol && x <= rho_M + tol; }
};

/// Cell averages may leave the bounds by this much through round-off alone
/// before the limiter treats it as a broken CFL condition.
inline constexpr double kBoundSlack = 1e-12;

/// (min, max) of the polynomial over the given cell-relative points.
template <typename Scalar>
std::pair<Scalar, Scalar> cell_extrema(const LocalPolynomial<Scalar>& p, const std::vector<Scalar>& points) {
  if (points.empty()) throw RejectedInput("cell_extrema: empty evaluation set");
  Scalar lo = std::numeric_limits<Scalar>::infinity();
  Scalar hi = -lo;
  for (Scalar y : points) {
    const Scalar v = p.at(y);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

template <typename Scalar>
struct ScaledPolynomial {
  LocalPolynomial<Scalar> poly;
  Scalar theta = 1;
};

/// theta for rho_bar + theta (P - rho_bar); a side whose extremum equals the
/// mean places no constraint.
template <typename Scalar>
Scalar scaling_factor(Scalar rho_bar, const BoundPair& bounds, std::pair<Scalar, Scalar> extrema) {
  using std::abs;
  Scalar theta = 1;
  const Scalar lo = extrema.first, hi = extrema.second;
  if (hi != rho_bar) theta = std::min(theta, abs((Scalar(bounds.rho_M) - rho_bar) / (hi - rho_bar)));
  if (lo != rho_bar) theta = std::min(theta, abs((Scalar(bounds.rho_m) - rho_bar) / (lo - rho_bar)));
  return std::clamp(theta, Scalar(0), Scalar(1));
}

/// Linear scaling about the cell mean so that the polynomial stays in the
/// bounds at the points the extrema were taken over.
template <typename Scalar>
ScaledPolynomial<Scalar> scale(const LocalPolynomial<Scalar>& p, Scalar rho_bar, const BoundPair& bounds,
                               std::pair<Scalar, Scalar> extrema) {
  if (!bounds.contains(static_cast<double>(rho_bar), kBoundSlack)) {
    throw InvariantViolation("limiter: cell average " + std::to_string(static_cast<double>(rho_bar)) +
                             " outside [" + std::to_string(bounds.rho_m) + ", " + std::to_string(bounds.rho_M) +
                             "]");
  }
  ScaledPolynomial<Scalar> out;
  out.theta = scaling_factor(rho_bar, bounds, extrema);
  out.poly = p;
  if (out.theta < Scalar(1)) {
    out.poly.coeffs *= out.theta;
    // the mean of the scaled polynomial is theta * rho_bar; restore it on the
    // constant term so the cell average is kept exactly
    out.poly.coeffs(0) += rho_bar - cell_mean(out.poly);
  }
  return out;
}

}  // namespace cweno
