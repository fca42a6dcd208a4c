#ifndef OPTIRL_EXPERT_FIT_HPP
#define OPTIRL_EXPERT_FIT_HPP

#include "optirl/option_set.hpp"

namespace optirl {

struct FitConfig {
  RbfGrid grid;
  double sigma2 = 0.01;
  double ridge_policy = 1e-8;
  double ridge_termination = 1e-2;
  int logistic_iterations = 50;
};

// Per-option Gaussian-RBF policies by ridge least squares of actions on RBF
// features, and sigmoid terminations by ridge-regularized logistic
// regression on the termination indicators b_{t+1} observed while the
// option was active. The caller supplies the policy-over-options.
OptionSet fit_expert_params(const std::vector<Trajectory>& demos, int n_options,
                            const FitConfig& cfg,
                            std::unique_ptr<PolicyOverOptions> policy_over_options);

// One Gaussian-RBF policy on all (s, a) pairs, options ignored.
GaussianRbfPolicy bc_fit(const std::vector<Trajectory>& demos, const FitConfig& cfg);

// Ridge least squares; throws NumericalError suggesting a larger ridge when
// the normal equations are singular.
Eigen::VectorXd ridge_solve(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                            double ridge);

// Ridge-regularized logistic regression via Newton iterations.
Eigen::VectorXd logistic_fit(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                             double ridge, int iterations);

}  // namespace optirl

#endif  // OPTIRL_EXPERT_FIT_HPP
