#include "cweno/grid.hpp"

namespace cweno {

ExtendedAverages ghost_extend(const Eigen::VectorXd& avg, const Grid& grid, Eigen::Index width) {
  grid.validate();
  if (avg.size() != grid.n_cells) throw RejectedInput("ghost_extend: averages do not match the grid");
  if (width < 0) throw RejectedInput("ghost_extend: negative width");
  const Eigen::Index n = grid.n_cells;
  if (grid.bc == Boundary::periodic && width > n) {
    throw RejectedInput("ghost_extend: periodic ghost width " + std::to_string(width) + " exceeds " +
                        std::to_string(n) + " cells");
  }
  ExtendedAverages ext;
  ext.width = width;
  ext.n_cells = n;
  ext.values.resize(n + 2 * width);
  ext.values.segment(width, n) = avg;
  if (grid.bc == Boundary::periodic) {
    ext.values.head(width) = avg.tail(width);
    ext.values.tail(width) = avg.head(width);
  } else {
    ext.values.head(width).setConstant(grid.boundary_value);
    ext.values.tail(width).setConstant(grid.boundary_value);
  }
  return ext;
}

}  // namespace cweno
