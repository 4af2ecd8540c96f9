#pragma once

#include <Eigen/Core>
#include <functional>

namespace lptk {

struct SimplexOptions {
  int max_evals = 4000;
  // Converged when, for every parameter k, the simplex diameter along k is
  // below rel_tol * max(|best_k|, |step_k|).
  double rel_tol = 1e-6;
};

struct SimplexResult {
  Eigen::VectorXd x;
  double fx = 0;
  int n_evals = 0;
  bool converged = false;
};

// Nelder-Mead downhill simplex. Fully deterministic: the initial simplex is
// x0 plus one per-parameter step, and ordering ties are broken by vertex index.
SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                          const Eigen::VectorXd& x0, const Eigen::VectorXd& step,
                          const SimplexOptions& opt = {});

}  // namespace lptk
