#ifndef OPTIRL_HESSIAN_SELECT_HPP
#define OPTIRL_HESSIAN_SELECT_HPP

#include <vector>

#include "optirl/trajectory_derivs.hpp"
#include "optirl/visit_index.hpp"

namespace optirl {

enum class DefiniteClass { kNegSemidef, kPosSemidef, kIndefinite };

const char* to_string(DefiniteClass c);

struct FeatureHessianStats {
  DefiniteClass class_theta = DefiniteClass::kNegSemidef;
  DefiniteClass class_vartheta = DefiniteClass::kNegSemidef;
  double tr_theta = 0.0;
  double tr_vartheta = 0.0;
  bool kept = true;
  double sign = 1.0;
};

struct HessianReport {
  std::vector<FeatureHessianStats> features;
  // estimated Hessians in compact (touched-parameter) coordinates; may be
  // empty when the streaming path classified on the fly
  std::vector<Eigen::MatrixXd> h_theta;
  std::vector<Eigen::MatrixXd> h_vartheta;
  bool classified = false;

  int n_features() const { return static_cast<int>(features.size()); }
  int n_kept() const;
  // trace vectors over kept features, in feature order, sign applied
  std::pair<Eigen::VectorXd, Eigen::VectorXd> kept_traces() const;
  std::vector<int> kept_indices() const;
};

// Monte-Carlo estimate over the demonstrations of
//   H_theta(rho_i)    = (1/N) sum_tau (g g^T + H) R_i(tau),
//   H_vartheta(rho_i) = (1/N) sum_tau (g g^T + H) Rhat_i(tau)
// with R_i the gamma-discounted return of feature psi_i along tau and
// Rhat_i the same sum taken from t=1 with gamma^(t-1) weights. Hessians are
// symmetrized. Traces are filled in; classification happens separately.
HessianReport estimate_feature_hessians(const std::vector<Trajectory>& demos,
                                        const Eigen::MatrixXd& psi, const VisitIndex& vi,
                                        const OptionSet& opts, double gamma);

// Eigenvalue classification with tolerance eig_tol * max(1, max |lambda|).
// Features with an indefinite Hessian on either side are dropped; a
// positive-semidefinite theta-Hessian flips the feature's sign (applied to
// both traces here and to the psi column by the caller).
void classify_and_trace(HessianReport& report, double eig_tol = 1e-6);

// Streaming estimate + classify that never holds more than one feature's
// Hessians in memory.
HessianReport estimate_and_classify(const std::vector<Trajectory>& demos,
                                    const Eigen::MatrixXd& psi, const VisitIndex& vi,
                                    const OptionSet& opts, double gamma,
                                    double eig_tol = 1e-6);

// w = -(tr_theta/|tr_theta| + tr_vartheta/|tr_vartheta|), renormalized to
// unit length; a zero trace vector drops its term.
Eigen::VectorXd select_weights(const Eigen::VectorXd& tr_theta,
                               const Eigen::VectorXd& tr_vartheta);

}  // namespace optirl

#endif  // OPTIRL_HESSIAN_SELECT_HPP
