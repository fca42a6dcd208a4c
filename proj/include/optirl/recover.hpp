#ifndef OPTIRL_RECOVER_HPP
#define OPTIRL_RECOVER_HPP

#include <string>

#include "optirl/hessian_select.hpp"
#include "optirl/irl_shaping.hpp"

namespace optirl {

struct RecoverConfig {
  double gamma = 0.99;
  PiOmegaMode pi_omega_mode = PiOmegaMode::kVisitedRenorm;
  bool mu_explicit_pi = false;
  int max_features = 200;
  double eig_tol = 1e-6;
  double sv_rel_tol = 1e-10;
};

struct RecoverResult {
  VisitIndex vi;
  Eigen::MatrixXd c1;
  Eigen::MatrixXd c2;
  NullspaceResult nullspace;
  Eigen::MatrixXd phi;        // M x p
  Eigen::MatrixXd advantage;  // L x p
  Eigen::MatrixXd psi;        // M x p
  HessianReport report;
  Eigen::VectorXd weights;    // p entries; dropped features hold 0, |w| = 1
  Eigen::VectorXd values;     // recovered reward on visited triples (psi * weights)
};

// The full pipeline: visit index and constraint matrices, Q-feature null
// space, reward shaping, Hessian estimation and classification, and the
// trace-scalarized weight selection. Errors carry a phase tag.
RecoverResult recover(const std::vector<Trajectory>& demos, const OptionSet& opts,
                      const RecoverConfig& cfg);

// max |[C1; C2] phi| / sigma_max, the null-space residual diagnostic.
double nullspace_residual(const RecoverResult& res);

void write_features_csv(const std::string& path, const RecoverResult& res);
void write_hessian_report_csv(const std::string& path, const HessianReport& report);
void write_reward_csv(const std::string& path, const VisitIndex& vi,
                      const Eigen::VectorXd& values);

}  // namespace optirl

#endif  // OPTIRL_RECOVER_HPP
