#ifndef OPTIRL_IRL_CONSTRAINTS_HPP
#define OPTIRL_IRL_CONSTRAINTS_HPP

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "optirl/option_set.hpp"
#include "optirl/visit_index.hpp"

namespace optirl {

// Parameter layout for options concatenated into one vector.
struct ParamLayout {
  std::vector<int> offset;  // per option
  int total = 0;

  static ParamLayout policies(const OptionSet& opts);
  static ParamLayout terminations(const OptionSet& opts);
};

// Closure over unvisited (s, w') pairs demanded by Pi_Omega's rows:
// renormalize pi_Omega over the visited options (default), or keep raw
// probabilities and let missing pairs contribute zero.
enum class PiOmegaMode { kVisitedRenorm, kZeroPad };

// Pi [L x M]: intra-option policy weights per pair, renormalized over the
// pair's visited actions (density weights for continuous actions).
Eigen::SparseMatrix<double> build_pi_matrix(const VisitIndex& vi, const OptionSet& opts);

// Pi_Omega [L x L]: policy-over-options, rows repeated per pair at a state.
Eigen::SparseMatrix<double> build_pi_omega(const VisitIndex& vi, const OptionSet& opts,
                                           PiOmegaMode mode);

// beta of the pair's option at the pair's state, per pair.
Eigen::VectorXd pair_terminations(const VisitIndex& vi, const OptionSet& opts);

// C1[k, m] = mu[m] * d/d theta_k log pi_{w_m}(a_m | s_m)
Eigen::MatrixXd build_policy_constraint(const VisitIndex& vi, const OptionSet& opts);

// C2 = B diag(mu1) (I - Pi_Omega) Pi with B[j, l] = d/d vartheta_j beta_{w_l}(s_l)
Eigen::MatrixXd build_termination_constraint(const VisitIndex& vi, const OptionSet& opts,
                                             PiOmegaMode mode = PiOmegaMode::kVisitedRenorm);

struct NullspaceResult {
  Eigen::MatrixXd phi;       // M x p, orthonormal columns, most-null first
  int numerical_rank = 0;
  double sigma_max = 0.0;
  int null_dim = 0;          // before the feature cap
};

// Orthonormal basis for null([C1; C2]) with singular values below
// max_dim * sigma_max * sv_rel_tol treated as zero. Keeps at most
// max_features directions (those with the smallest constraint violation).
NullspaceResult qfeature_nullspace(const Eigen::MatrixXd& c1, const Eigen::MatrixXd& c2,
                                   int max_features = 200, double sv_rel_tol = 1e-10);

}  // namespace optirl

#endif  // OPTIRL_IRL_CONSTRAINTS_HPP
