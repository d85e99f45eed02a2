#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>

#include "cweno/errors.hpp"
#include "cweno/quadrature.hpp"

namespace cweno {

enum class Boundary { periodic, constant_extension };

/// Uniform grid: cell j is [x0 + j h, x0 + (j+1) h].
struct Grid {
  double x0 = 0.0;
  double h = 1.0;
  Eigen::Index n_cells = 1;
  Boundary bc = Boundary::periodic;
  /// Value imposed outside the domain for constant extension.
  double boundary_value = 0.0;

  double left_edge(Eigen::Index j) const { return x0 + static_cast<double>(j) * h; }
  double center(Eigen::Index j) const { return x0 + (static_cast<double>(j) + 0.5) * h; }
  double length() const { return static_cast<double>(n_cells) * h; }

  void validate() const {
    if (!(h > 0.0)) throw RejectedInput("grid: h must be positive");
    if (n_cells < 1) throw RejectedInput("grid: need at least one cell");
  }
};

/// Grid covering [a, b] with n cells.
inline Grid uniform_grid(double a, double b, Eigen::Index n, Boundary bc = Boundary::periodic,
                         double boundary_value = 0.0) {
  if (!(b > a) || n < 1) throw RejectedInput("uniform_grid: need b > a and n >= 1");
  return Grid{a, (b - a) / static_cast<double>(n), n, bc, boundary_value};
}

/// Cell averages with the time they belong to.
struct CellAverages {
  Eigen::VectorXd values;
  double t = 0.0;
};

/// Averages on cells -width .. n+width-1, stored from index 0.
struct ExtendedAverages {
  Eigen::VectorXd values;
  Eigen::Index width = 0;
  Eigen::Index n_cells = 0;

  double operator()(Eigen::Index j) const { return values(j + width); }
};

/// Pads averages with `width` ghost cells per side: periodic wrap-around or
/// the grid's constant boundary value.
ExtendedAverages ghost_extend(const Eigen::VectorXd& avg, const Grid& grid, Eigen::Index width);

/// rho_bar_j = sum_nu gamma_nu rho0(x_{j-1/2} + h y_nu).
template <typename F>
Eigen::VectorXd initial_cell_averages(F&& rho0, const Grid& grid, const QuadratureRule<double>& rule) {
  grid.validate();
  Eigen::VectorXd out(grid.n_cells);
  for (Eigen::Index j = 0; j < grid.n_cells; ++j) {
    const double xl = grid.left_edge(j);
    double acc = 0.0;
    for (Eigen::Index nu = 0; nu < rule.size(); ++nu) {
      acc += rule.weights(nu) * rho0(xl + grid.h * rule.nodes(nu));
    }
    out(j) = acc;
  }
  return out;
}

}  // namespace cweno
