#include "lptk/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "lptk/errors.hpp"

namespace lptk {

namespace {

constexpr double kAlpha = 1.0;  // reflection
constexpr double kGamma = 2.0;  // expansion
constexpr double kRho = 0.5;    // contraction
constexpr double kSigma = 0.5;  // shrink

}  // namespace

SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                          const Eigen::VectorXd& x0, const Eigen::VectorXd& step,
                          const SimplexOptions& opt) {
  const Eigen::Index n = x0.size();
  if (n < 1) throw ValidationError("nelder_mead: empty parameter vector");
  if (step.size() != n) throw ValidationError("nelder_mead: step size mismatch");

  std::vector<Eigen::VectorXd> verts(static_cast<std::size_t>(n) + 1, x0);
  std::vector<double> fvals(static_cast<std::size_t>(n) + 1, 0.0);
  for (Eigen::Index k = 0; k < n; ++k) verts[static_cast<std::size_t>(k) + 1][k] += step[k];

  int evals = 0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    fvals[i] = f(verts[i]);
    ++evals;
  }

  std::vector<std::size_t> order(verts.size());
  std::iota(order.begin(), order.end(), 0u);
  auto sort_order = [&] {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
  };

  auto converged = [&]() {
    const Eigen::VectorXd& best = verts[order.front()];
    for (Eigen::Index k = 0; k < n; ++k) {
      double lo = verts[0][k], hi = verts[0][k];
      for (const auto& v : verts) {
        lo = std::min(lo, v[k]);
        hi = std::max(hi, v[k]);
      }
      const double scale = std::max(std::abs(best[k]), std::abs(step[k]));
      if (hi - lo > opt.rel_tol * scale) return false;
    }
    return true;
  };

  SimplexResult res;
  sort_order();
  while (evals < opt.max_evals) {
    if (converged()) {
      res.converged = true;
      break;
    }
    const std::size_t i_best = order.front();
    const std::size_t i_worst = order.back();
    const std::size_t i_second = order[order.size() - 2];

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (i != i_worst) centroid += verts[i];
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd reflected = centroid + kAlpha * (centroid - verts[i_worst]);
    const double f_reflected = f(reflected);
    ++evals;

    if (f_reflected < fvals[i_best]) {
      const Eigen::VectorXd expanded = centroid + kGamma * (reflected - centroid);
      const double f_expanded = f(expanded);
      ++evals;
      if (f_expanded < f_reflected) {
        verts[i_worst] = expanded;
        fvals[i_worst] = f_expanded;
      } else {
        verts[i_worst] = reflected;
        fvals[i_worst] = f_reflected;
      }
    } else if (f_reflected < fvals[i_second]) {
      verts[i_worst] = reflected;
      fvals[i_worst] = f_reflected;
    } else {
      const bool outside = f_reflected < fvals[i_worst];
      const Eigen::VectorXd contracted =
          outside ? centroid + kRho * (reflected - centroid)
                  : centroid + kRho * (verts[i_worst] - centroid);
      const double f_contracted = f(contracted);
      ++evals;
      const double bar = outside ? f_reflected : fvals[i_worst];
      if (f_contracted <= bar) {
        verts[i_worst] = contracted;
        fvals[i_worst] = f_contracted;
      } else {
        const Eigen::VectorXd best = verts[i_best];
        for (std::size_t i = 0; i < verts.size(); ++i) {
          if (i == i_best) continue;
          verts[i] = best + kSigma * (verts[i] - best);
          fvals[i] = f(verts[i]);
          ++evals;
        }
      }
    }
    sort_order();
  }

  sort_order();
  res.x = verts[order.front()];
  res.fx = fvals[order.front()];
  res.n_evals = evals;
  return res;
}

}  // namespace lptk
