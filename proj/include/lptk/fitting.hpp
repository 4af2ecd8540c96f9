#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lptk/grid.hpp"
#include "lptk/polariton.hpp"

namespace lptk {

struct PeakPoint {
  double B = 0;       // [T]
  double f = 0;       // [Hz]
  double weight = 1;  // > 0
};

// Dispersion fit points. The constructor validates the invariants (B, f,
// weight > 0) and normalizes weights to mean 1; from_file_rows() keeps stored
// weights verbatim so file round trips stay bit-exact.
struct PeakList {
  std::vector<PeakPoint> points;
  std::string source;

  PeakList() = default;
  PeakList(std::vector<PeakPoint> pts, std::string src);
  static PeakList from_file_rows(std::vector<PeakPoint> pts, std::string src);
};

// Per-B-column local transmission minima with depth 1-T >= threshold and
// prominence >= min_prominence; centers refined by 3-point parabolic
// interpolation; at most the two deepest peaks kept per column. Weights are
// the dip depths (normalized by the PeakList constructor).
PeakList extract_peaks(const ResponseMap& map, double threshold, double min_prominence);

// Fit parameter vector order: (f_cav [Hz], eta, m_star_ratio, f_p [Hz]).
using FitTheta = std::array<double, 4>;

struct FitBounds {
  FitTheta lo;
  FitTheta hi;  // hi[k] == lo[k] locks parameter k
};

struct FitOptions {
  int restarts = 8;          // random starts in addition to theta0
  int bootstrap = 200;       // residual-bootstrap resamples (0 disables)
  std::uint64_t seed = 1;    // drives the multi-start draws and the bootstrap
  int max_evals = 6000;      // simplex budget per start
  double rel_tol = 1e-6;     // simplex convergence, relative to the bounds box
};

struct FitResult {
  FitTheta theta{};
  double rss = 0;  // weighted residual sum of squares [Hz^2]
  int n_points = 0;
  FitTheta uncertainty{};  // bootstrap half-widths (central 68% interval), 0 if disabled
  bool converged = false;
  int n_restarts_used = 0;
};

// Branch frequencies of the model parameterized by theta (Q, tau_p, n_s do not
// enter the dispersion).
BranchFreqs model_branches(double B, PolaritonModelKind kind, const FitTheta& theta);

// Signed distance from f to the nearest model branch at B.
double nearest_branch_residual(double B, double f, PolaritonModelKind kind,
                               const FitTheta& theta);

// Weighted nearest-branch least squares by multi-start Nelder-Mead inside the
// bounds box. Deterministic for fixed (inputs, seed). Throws ValidationError
// for fewer than 4 points or an ill-formed box.
FitResult fit_dispersion(const PeakList& peaks, PolaritonModelKind kind, const FitTheta& theta0,
                         const FitBounds& bounds, const FitOptions& opt = {});

struct QFitResult {
  double Q = 0;
  double f0 = 0;        // dip center [Hz]
  double gamma = 0;     // half width at half depth [Hz]
  double depth = 0;
  double baseline = 0;
  bool resolved = true;  // false when gamma fell below the grid spacing
};

// Least-squares Lorentzian dip fit (center, half-width, depth, baseline) on a
// 1D frequency cut; Q = f0/(2 gamma). Throws FitError when no dip is present
// or the fit does not converge.
QFitResult fit_quality_factor(const Eigen::ArrayXd& f, const Eigen::ArrayXd& T);

}  // namespace lptk
