#ifndef OPTIRL_IRL_SHAPING_HPP
#define OPTIRL_IRL_SHAPING_HPP

#include "optirl/irl_constraints.hpp"

namespace optirl {

// A = (I - Pi_Omega) Pi Phi, the advantage-over-options features [L x p].
Eigen::MatrixXd advantage_features(const Eigen::MatrixXd& phi, const VisitIndex& vi,
                                   const OptionSet& opts,
                                   PiOmegaMode mode = PiOmegaMode::kVisitedRenorm);

// Reward features on visited triples:
//   Psi[m] = Phi[m] - (Pi Phi)[pair(m)] + beta_{w_m}(s_m) * A[pair(m)]
// i.e. the intra-option advantage plus the termination-weighted
// advantage-over-options correction.
Eigen::MatrixXd shape_rewards(const Eigen::MatrixXd& phi, const Eigen::MatrixXd& advantage,
                              const VisitIndex& vi, const OptionSet& opts);

}  // namespace optirl

#endif  // OPTIRL_IRL_SHAPING_HPP
