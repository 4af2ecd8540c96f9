#pragma once

#include <Eigen/Core>

namespace lptk {

// Uniform 1D axis with samples sample_i = start + i*(stop - start)/(count - 1).
// The formula is evaluated literally (not accumulated) so sample(0) == start
// bit-exactly and repeated calls agree.
struct Grid1D {
  double start = 0.0;
  double stop = 1.0;
  Eigen::Index count = 2;

  Grid1D() = default;
  Grid1D(double start_, double stop_, Eigen::Index count_);  // validates

  double step() const { return (stop - start) / static_cast<double>(count - 1); }
  double sample(Eigen::Index i) const { return start + static_cast<double>(i) * step(); }
  Eigen::ArrayXd samples() const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;
};

// Rectangular (B x f) grid. values(ib, if) follows row-major semantics in the
// file format: B is the outer (row) index, f the inner (column) index.
struct Grid2D {
  Grid1D b_axis;
  Grid1D f_axis;
  Eigen::ArrayXXd values;  // shape (b_axis.count, f_axis.count)

  friend bool operator==(const Grid2D& a, const Grid2D& b) {
    return a.b_axis == b.b_axis && a.f_axis == b.f_axis &&
           a.values.rows() == b.values.rows() && a.values.cols() == b.values.cols() &&
           (a.values == b.values).all();
  }
};

// Zero-filled grid over two validated axes.
Grid2D make_grid2d(const Grid1D& b_axis, const Grid1D& f_axis);

enum class MapQuantity { Transmission, PhotoResponse };

struct ResponseMap {
  Grid2D grid;
  MapQuantity quantity = MapQuantity::Transmission;

  friend bool operator==(const ResponseMap&, const ResponseMap&) = default;
};

}  // namespace lptk
