#ifndef OPTIRL_TRAJECTORY_DERIVS_HPP
#define OPTIRL_TRAJECTORY_DERIVS_HPP

#include "optirl/irl_constraints.hpp"
#include "optirl/mdp.hpp"
#include "optirl/option_set.hpp"

namespace optirl {

// Gradient and Hessian of log P(tau) in the concatenated parameter layouts.
// theta terms sum the intra-option policy scores over every step; vartheta
// terms sum the termination log-likelihood derivatives over transitions
// t >= 1 (b=1 contributes log beta, b=0 contributes log(1-beta)). Transition
// dynamics and pi_Omega factors carry no theta/vartheta dependence.
struct TrajectoryDerivatives {
  Eigen::VectorXd g_theta;
  Eigen::MatrixXd h_theta;
  Eigen::VectorXd g_vartheta;
  Eigen::MatrixXd h_vartheta;
};

TrajectoryDerivatives trajectory_log_derivatives(const Trajectory& traj,
                                                 const OptionSet& opts);

// log P(tau) up to theta/vartheta-independent terms; the finite-difference
// oracle for the derivatives above.
double trajectory_log_prob_params(const Trajectory& traj, const OptionSet& opts);

}  // namespace optirl

#endif  // OPTIRL_TRAJECTORY_DERIVS_HPP
