#include "lptk/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lptk/errors.hpp"
#include "lptk/rng.hpp"
#include "lptk/simplex.hpp"

namespace lptk {

PeakList::PeakList(std::vector<PeakPoint> pts, std::string src)
    : points(std::move(pts)), source(std::move(src)) {
  double wsum = 0.0;
  for (const PeakPoint& p : points) {
    if (!(p.B > 0.0) || !(p.f > 0.0) || !(p.weight > 0.0))
      throw ValidationError("PeakList: B, f and weight must be > 0");
    wsum += p.weight;
  }
  if (!points.empty()) {
    const double mean = wsum / static_cast<double>(points.size());
    for (PeakPoint& p : points) p.weight /= mean;
  }
}

PeakList PeakList::from_file_rows(std::vector<PeakPoint> pts, std::string src) {
  for (const PeakPoint& p : pts)
    if (!(p.B > 0.0) || !(p.f > 0.0) || !(p.weight > 0.0))
      throw ValidationError("PeakList: B, f and weight must be > 0");
  PeakList list;
  list.points = std::move(pts);
  list.source = std::move(src);
  return list;
}

namespace {

struct ColumnPeak {
  Eigen::Index idx = 0;   // grid index of the (plateau-centered) maximum of depth
  double depth = 0;
  double prominence = 0;
};

// Peaks of the depth profile d = 1 - T along one column, with the usual
// prominence definition (height above the higher of the two bases toward the
// nearest higher peak or the array ends).
std::vector<ColumnPeak> column_peaks(const Eigen::ArrayXd& depth) {
  const Eigen::Index n = depth.size();
  std::vector<ColumnPeak> peaks;
  Eigen::Index i = 1;
  while (i + 1 < n) {
    if (depth[i] <= depth[i - 1]) {
      ++i;
      continue;
    }
    Eigen::Index j = i;  // plateau [i, j]
    while (j + 1 < n && depth[j + 1] == depth[i]) ++j;
    if (j + 1 >= n) break;  // plateau runs into the boundary
    if (depth[j + 1] < depth[i]) {
      ColumnPeak p;
      p.idx = (i + j) / 2;
      p.depth = depth[p.idx];
      double left_base = p.depth;
      for (Eigen::Index k = i - 1; k >= 0; --k) {
        left_base = std::min(left_base, depth[k]);
        if (depth[k] > p.depth) break;
      }
      double right_base = p.depth;
      for (Eigen::Index k = j + 1; k < n; ++k) {
        right_base = std::min(right_base, depth[k]);
        if (depth[k] > p.depth) break;
      }
      p.prominence = p.depth - std::max(left_base, right_base);
      peaks.push_back(p);
    }
    i = j + 1;
  }
  return peaks;
}

// 3-point parabolic refinement of the peak center; offset clamped to half a step.
double refine_center(const Grid1D& f_axis, const Eigen::ArrayXd& depth, Eigen::Index idx) {
  if (idx <= 0 || idx + 1 >= depth.size()) return f_axis.sample(idx);
  const double dm = depth[idx - 1], d0 = depth[idx], dp = depth[idx + 1];
  const double denom = dm - 2.0 * d0 + dp;
  if (!(denom < 0.0)) return f_axis.sample(idx);  // flat or degenerate
  double offset = 0.5 * (dm - dp) / denom;
  offset = std::clamp(offset, -0.5, 0.5);
  return f_axis.sample(idx) + offset * f_axis.step();
}

}  // namespace

PeakList extract_peaks(const ResponseMap& map, double threshold, double min_prominence) {
  if (map.quantity != MapQuantity::Transmission)
    throw ValidationError("extract_peaks: map quantity must be transmission");
  if (map.grid.values.size() == 0) throw ValidationError("extract_peaks: empty map");
  if ((map.grid.values < -1e-12).any() || (map.grid.values > 1.0 + 1e-12).any())
    throw ValidationError("extract_peaks: transmission values must lie in [0,1]");

  std::vector<PeakPoint> pts;
  for (Eigen::Index ib = 0; ib < map.grid.b_axis.count; ++ib) {
    const double B = map.grid.b_axis.sample(ib);
    if (!(B > 0.0)) continue;  // dispersion points need a positive field
    const Eigen::ArrayXd depth = 1.0 - map.grid.values.row(ib).transpose();
    std::vector<ColumnPeak> peaks = column_peaks(depth);
    std::erase_if(peaks, [&](const ColumnPeak& p) {
      return p.depth < threshold || p.prominence < min_prominence;
    });
    std::stable_sort(peaks.begin(), peaks.end(),
                     [](const ColumnPeak& a, const ColumnPeak& b) { return a.depth > b.depth; });
    if (peaks.size() > 2) peaks.resize(2);
    for (const ColumnPeak& p : peaks)
      pts.push_back({B, refine_center(map.grid.f_axis, depth, p.idx), p.depth});
  }
  return PeakList(std::move(pts), "extract_peaks");
}

BranchFreqs model_branches(double B, PolaritonModelKind kind, const FitTheta& theta) {
  const double f_cav = theta[0];
  const double omega = theta[1] * f_cav;
  const double f_c =
      constants::e_charge * B / (constants::two_pi * theta[2] * constants::m_electron);
  const double f_mp = (theta[3] == 0.0) ? f_c : std::hypot(f_c, theta[3]);
  return kind == PolaritonModelKind::CoupledMode ? coupled_mode_freqs(f_cav, f_mp, omega)
                                                 : hopfield_freqs(f_cav, f_mp, omega);
}

double nearest_branch_residual(double B, double f, PolaritonModelKind kind,
                               const FitTheta& theta) {
  const BranchFreqs bf = model_branches(B, kind, theta);
  const double d_lp = f - bf.f_lp;
  const double d_up = f - bf.f_up;
  return std::abs(d_lp) <= std::abs(d_up) ? d_lp : d_up;
}

namespace {

double weighted_rss(const PeakList& peaks, PolaritonModelKind kind, const FitTheta& theta) {
  double rss = 0.0;
  for (const PeakPoint& p : peaks.points) {
    const double r = nearest_branch_residual(p.B, p.f, kind, theta);
    rss += p.weight * r * r;
  }
  return rss;
}

// Box <-> unit-cube mapping over the active (non-locked) parameters.
struct BoxMap {
  FitTheta lo{}, hi{};
  std::vector<int> active;

  explicit BoxMap(const FitBounds& b) : lo(b.lo), hi(b.hi) {
    for (int k = 0; k < 4; ++k) {
      if (!(hi[k] >= lo[k])) throw ValidationError("fit_dispersion: bounds must have lo <= hi");
      if (hi[k] > lo[k]) active.push_back(k);
    }
    if (!(lo[1] >= 0.0)) throw ValidationError("fit_dispersion: eta lower bound must be >= 0");
    if (!(lo[0] > 0.0)) throw ValidationError("fit_dispersion: f_cav bounds must be positive");
    if (!(lo[2] > 0.0))
      throw ValidationError("fit_dispersion: m_star_ratio bounds must be positive");
    if (!(lo[3] >= 0.0)) throw ValidationError("fit_dispersion: f_p bounds must be >= 0");
  }

  Eigen::VectorXd to_z(const FitTheta& th) const {
    Eigen::VectorXd z(static_cast<Eigen::Index>(active.size()));
    for (std::size_t a = 0; a < active.size(); ++a) {
      const int k = active[a];
      z[static_cast<Eigen::Index>(a)] = (th[k] - lo[k]) / (hi[k] - lo[k]);
    }
    return z;
  }

  FitTheta to_theta(const Eigen::VectorXd& z) const {
    FitTheta th = lo;
    for (std::size_t a = 0; a < active.size(); ++a) {
      const int k = active[a];
      const double zc = std::clamp(z[static_cast<Eigen::Index>(a)], 0.0, 1.0);
      th[k] = lo[k] + zc * (hi[k] - lo[k]);
    }
    return th;
  }
};

double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(i);
  return sorted[i] * (1.0 - frac) + sorted[i + 1] * frac;
}

}  // namespace

FitResult fit_dispersion(const PeakList& peaks, PolaritonModelKind kind, const FitTheta& theta0,
                         const FitBounds& bounds, const FitOptions& opt) {
  if (peaks.points.size() < 4)
    throw ValidationError("fit_dispersion: need at least 4 peak points");
  const BoxMap box(bounds);

  double penalty_scale = 1.0;
  for (const PeakPoint& p : peaks.points) penalty_scale += p.weight * p.f * p.f;

  auto objective_for = [&](const PeakList& data) {
    return [&box, &data, kind, penalty_scale](const Eigen::VectorXd& z) {
      double pen = 0.0;
      for (Eigen::Index k = 0; k < z.size(); ++k) {
        const double over = z[k] - std::clamp(z[k], 0.0, 1.0);
        pen += over * over;
      }
      return weighted_rss(data, kind, box.to_theta(z)) + pen * penalty_scale;
    };
  };
  auto objective = objective_for(peaks);

  FitTheta th0 = theta0;
  for (int k = 0; k < 4; ++k) th0[k] = std::clamp(th0[k], bounds.lo[k], bounds.hi[k]);

  FitResult result;
  result.n_points = static_cast<int>(peaks.points.size());

  if (box.active.empty()) {  // fully locked box: nothing to optimize
    result.theta = box.to_theta(Eigen::VectorXd());
    result.rss = weighted_rss(peaks, kind, result.theta);
    result.converged = true;
    return result;
  }

  const Eigen::Index dim = static_cast<Eigen::Index>(box.active.size());
  const Eigen::VectorXd step = Eigen::VectorXd::Constant(dim, 0.08);
  SimplexOptions sopt;
  sopt.max_evals = opt.max_evals;
  sopt.rel_tol = opt.rel_tol;

  Rng rng(opt.seed);
  SimplexResult best;
  bool have_best = false;
  int runs = 0;
  for (int s = 0; s <= std::max(0, opt.restarts); ++s) {
    Eigen::VectorXd z0(dim);
    if (s == 0) {
      z0 = box.to_z(th0);
    } else {
      for (Eigen::Index k = 0; k < dim; ++k) z0[k] = rng.uniform01();
    }
    SimplexResult run = nelder_mead(objective, z0, step, sopt);
    ++runs;
    if (!have_best || run.fx < best.fx) {
      best = run;
      have_best = true;
    }
  }

  result.theta = box.to_theta(best.x);
  result.rss = weighted_rss(peaks, kind, result.theta);
  result.converged = best.converged;
  result.n_restarts_used = runs;

  if (opt.bootstrap > 0) {
    const std::size_t npts = peaks.points.size();
    std::vector<double> fitted(npts), residual(npts);
    for (std::size_t i = 0; i < npts; ++i) {
      const PeakPoint& p = peaks.points[i];
      const double r = nearest_branch_residual(p.B, p.f, kind, result.theta);
      residual[i] = r;
      fitted[i] = p.f - r;
    }
    const Eigen::VectorXd z_hat = box.to_z(result.theta);
    const Eigen::VectorXd bstep = Eigen::VectorXd::Constant(dim, 0.02);
    SimplexOptions bopt;
    bopt.max_evals = std::max(1000, opt.max_evals / 2);
    bopt.rel_tol = opt.rel_tol;

    std::array<std::vector<double>, 4> samples;
    PeakList resampled = peaks;  // same B and weights, frequencies replaced per draw
    for (int b = 0; b < opt.bootstrap; ++b) {
      for (std::size_t i = 0; i < npts; ++i)
        resampled.points[i].f = fitted[i] + residual[rng.index(npts)];
      auto boot_obj = objective_for(resampled);
      const SimplexResult run = nelder_mead(boot_obj, z_hat, bstep, bopt);
      const FitTheta th = box.to_theta(run.x);
      for (int k = 0; k < 4; ++k) samples[static_cast<std::size_t>(k)].push_back(th[k]);
    }
    for (int k = 0; k < 4; ++k) {
      auto& s = samples[static_cast<std::size_t>(k)];
      std::sort(s.begin(), s.end());
      result.uncertainty[static_cast<std::size_t>(k)] =
          0.5 * (quantile_sorted(s, 0.84) - quantile_sorted(s, 0.16));
    }
  }
  return result;
}

QFitResult fit_quality_factor(const Eigen::ArrayXd& f, const Eigen::ArrayXd& T) {
  const Eigen::Index n = f.size();
  if (n < 5 || T.size() != n) throw FitError("fit_quality_factor: need >= 5 samples");
  for (Eigen::Index i = 0; i + 1 < n; ++i)
    if (!(f[i] < f[i + 1])) throw FitError("fit_quality_factor: frequencies must increase");

  const double span = f[n - 1] - f[0];
  const double f_mid = 0.5 * (f[0] + f[n - 1]);
  const double grid_step = span / static_cast<double>(n - 1);

  // Initial guesses from the data: baseline near the top of the distribution,
  // dip at the minimum, width from the half-depth crossing.
  std::vector<double> sorted(T.data(), T.data() + n);
  std::sort(sorted.begin(), sorted.end());
  const double baseline0 = quantile_sorted(sorted, 0.9);
  Eigen::Index i_min = 0;
  T.minCoeff(&i_min);
  const double depth0 = baseline0 - T[i_min];
  if (!(depth0 > 0.0)) throw FitError("fit_quality_factor: no dip in the cut");
  const double half_level = baseline0 - 0.5 * depth0;
  Eigen::Index left = i_min, right = i_min;
  while (left > 0 && T[left] < half_level) --left;
  while (right + 1 < n && T[right] < half_level) ++right;
  double gamma0 = 0.5 * (f[right] - f[left]);
  if (!(gamma0 > 0.0)) gamma0 = grid_step;

  // Scaled parameters: (center offset, half-width) in units of the span.
  auto model = [&](double fi, const Eigen::VectorXd& q) {
    const double f0 = f_mid + q[0] * span;
    const double g = std::abs(q[1]) * span;
    const double dz = fi - f0;
    return q[3] - q[2] * (g * g) / (dz * dz + g * g);
  };
  auto objective = [&](const Eigen::VectorXd& q) {
    double rss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double r = T[i] - model(f[i], q);
      rss += r * r;
    }
    return rss;
  };

  Eigen::VectorXd q0(4);
  q0 << (f[i_min] - f_mid) / span, gamma0 / span, depth0, baseline0;
  Eigen::VectorXd step(4);
  step << 0.02, 0.5 * gamma0 / span, 0.2 * depth0, 0.1 * depth0;

  SimplexOptions sopt;
  sopt.max_evals = 20000;
  sopt.rel_tol = 1e-9;
  const SimplexResult run = nelder_mead(objective, q0, step, sopt);
  if (!run.converged) throw FitError("fit_quality_factor: Lorentzian fit did not converge");

  QFitResult out;
  out.f0 = f_mid + run.x[0] * span;
  out.gamma = std::abs(run.x[1]) * span;
  out.depth = run.x[2];
  out.baseline = run.x[3];
  if (!(out.gamma > 0.0) || !(out.f0 > 0.0))
    throw FitError("fit_quality_factor: degenerate fit");
  out.Q = out.f0 / (2.0 * out.gamma);
  out.resolved = out.gamma >= grid_step;
  return out;
}

}  // namespace lptk
