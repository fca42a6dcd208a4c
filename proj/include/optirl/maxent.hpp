#ifndef OPTIRL_MAXENT_HPP
#define OPTIRL_MAXENT_HPP

#include <vector>

#include <Eigen/Core>

#include "optirl/mdp.hpp"

namespace optirl {

struct MaxEntConfig {
  double lr = 0.05;
  int iterations = 300;
  int horizon = 400;  // forward/backward pass length
};

struct MaxEntResult {
  Eigen::VectorXd reward;     // per state
  double grad_norm = 0.0;     // max-norm of the final likelihood gradient
  std::vector<double> grad_curve;
};

// Maximum entropy IRL with tabular state-indicator features: gradient ascent
// on the demonstration likelihood, with expected state visitations from a
// finite-horizon soft value iteration (backward) and occupancy propagation
// (forward). Terminal states absorb; their visit counts include the
// demonstrations' terminal arrivals.
MaxEntResult maxent_irl(const std::vector<Trajectory>& demos,
                        const std::vector<Eigen::MatrixXd>& transition,
                        const std::vector<int>& terminal_states, const MaxEntConfig& cfg);

// Max-norm differences of successive soft-value backward iterates.
std::vector<double> soft_value_diffs(const Eigen::VectorXd& reward,
                                     const std::vector<Eigen::MatrixXd>& transition,
                                     const std::vector<int>& terminal_states, int horizon);

}  // namespace optirl

#endif  // OPTIRL_MAXENT_HPP
