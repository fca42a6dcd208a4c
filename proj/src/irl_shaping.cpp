#include "optirl/irl_shaping.hpp"

#include "optirl/common.hpp"

namespace optirl {

Eigen::MatrixXd advantage_features(const Eigen::MatrixXd& phi, const VisitIndex& vi,
                                   const OptionSet& opts, PiOmegaMode mode) {
  if (phi.rows() != vi.n_triples())
    throw DataError("advantage_features: Phi rows must match the visit index");
  const auto pi = build_pi_matrix(vi, opts);
  const auto pi_omega = build_pi_omega(vi, opts, mode);
  const Eigen::MatrixXd q_omega = pi * phi;  // [L x p]
  return q_omega - pi_omega * q_omega;
}

Eigen::MatrixXd shape_rewards(const Eigen::MatrixXd& phi, const Eigen::MatrixXd& advantage,
                              const VisitIndex& vi, const OptionSet& opts) {
  if (phi.rows() != vi.n_triples() || advantage.rows() != vi.n_pairs() ||
      phi.cols() != advantage.cols())
    throw DataError("shape_rewards: inconsistent feature shapes");
  const auto pi = build_pi_matrix(vi, opts);
  const Eigen::MatrixXd v_intra = pi * phi;  // per-pair policy average of Phi
  const Eigen::VectorXd beta = pair_terminations(vi, opts);
  Eigen::MatrixXd psi(phi.rows(), phi.cols());
  for (int m = 0; m < vi.n_triples(); ++m) {
    const int l = vi.pair_of_triple(m);
    psi.row(m) = phi.row(m) - v_intra.row(l) + beta[l] * advantage.row(l);
  }
  return psi;
}

}  // namespace optirl
