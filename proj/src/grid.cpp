#include "lptk/grid.hpp"

#include <cmath>

#include "lptk/errors.hpp"

namespace lptk {

Grid1D::Grid1D(double start_, double stop_, Eigen::Index count_)
    : start(start_), stop(stop_), count(count_) {
  if (!(std::isfinite(start) && std::isfinite(stop)))
    throw ValidationError("Grid1D: start/stop must be finite");
  if (count < 2) throw ValidationError("Grid1D: count must be >= 2");
  if (!(start < stop)) throw ValidationError("Grid1D: start must be < stop");
}

Eigen::ArrayXd Grid1D::samples() const {
  Eigen::ArrayXd out(count);
  for (Eigen::Index i = 0; i < count; ++i) out[i] = sample(i);
  return out;
}

Grid2D make_grid2d(const Grid1D& b_axis, const Grid1D& f_axis) {
  // Re-run the axis checks so aggregate-initialized axes are rejected too.
  Grid1D b(b_axis.start, b_axis.stop, b_axis.count);
  Grid1D f(f_axis.start, f_axis.stop, f_axis.count);
  Grid2D g;
  g.b_axis = b;
  g.f_axis = f;
  g.values = Eigen::ArrayXXd::Zero(b.count, f.count);
  return g;
}

}  // namespace lptk
