#include "optirl/irl_constraints.hpp"

#include <Eigen/Dense>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "optirl/common.hpp"

namespace optirl {

ParamLayout ParamLayout::policies(const OptionSet& opts) {
  ParamLayout lay;
  for (const auto& o : opts.options) {
    lay.offset.push_back(lay.total);
    lay.total += o.policy->param_dim();
  }
  return lay;
}

ParamLayout ParamLayout::terminations(const OptionSet& opts) {
  ParamLayout lay;
  for (const auto& o : opts.options) {
    lay.offset.push_back(lay.total);
    lay.total += o.termination.param_dim();
  }
  return lay;
}

Eigen::SparseMatrix<double> build_pi_matrix(const VisitIndex& vi, const OptionSet& opts) {
  std::vector<Eigen::Triplet<double>> trip;
  for (int l = 0; l < vi.n_pairs(); ++l) {
    const auto& pr = vi.pair(l);
    const auto& pol = *opts.options[pr.option].policy;
    double mass = 0.0;
    for (int m : vi.triples_of_pair(l)) mass += pol.prob(pr.s, vi.triple(m).a);
    if (mass <= 0.0)
      throw NumericalError("pair " + pr.s.to_string() + " option " +
                           std::to_string(pr.option) + " has zero renormalization mass");
    for (int m : vi.triples_of_pair(l))
      trip.emplace_back(l, m, pol.prob(pr.s, vi.triple(m).a) / mass);
  }
  Eigen::SparseMatrix<double> pi(vi.n_pairs(), vi.n_triples());
  pi.setFromTriplets(trip.begin(), trip.end());
  return pi;
}

Eigen::SparseMatrix<double> build_pi_omega(const VisitIndex& vi, const OptionSet& opts,
                                           PiOmegaMode mode) {
  std::vector<Eigen::Triplet<double>> trip;
  for (int k = 0; k < vi.n_states(); ++k) {
    const auto& pairs = vi.pairs_of_state(k);
    const Eigen::VectorXd probs = opts.policy_over_options->probs(vi.state(k));
    double mass = 0.0;
    for (int l : pairs) mass += probs[vi.pair(l).option];
    if (mode == PiOmegaMode::kVisitedRenorm && mass <= 0.0)
      throw NumericalError(
          "pi_Omega has no mass on the visited options at state " +
          vi.state(k).to_string() + "; consider irl.pi_omega_renorm = zero_pad");
    for (int row : pairs)
      for (int col : pairs) {
        const double p = probs[vi.pair(col).option];
        trip.emplace_back(row, col,
                          mode == PiOmegaMode::kVisitedRenorm ? p / mass : p);
      }
  }
  Eigen::SparseMatrix<double> po(vi.n_pairs(), vi.n_pairs());
  po.setFromTriplets(trip.begin(), trip.end());
  return po;
}

Eigen::VectorXd pair_terminations(const VisitIndex& vi, const OptionSet& opts) {
  Eigen::VectorXd beta(vi.n_pairs());
  for (int l = 0; l < vi.n_pairs(); ++l) {
    const auto& pr = vi.pair(l);
    beta[l] = opts.options[pr.option].termination.beta(pr.s);
  }
  return beta;
}

Eigen::MatrixXd build_policy_constraint(const VisitIndex& vi, const OptionSet& opts) {
  const ParamLayout lay = ParamLayout::policies(opts);
  Eigen::MatrixXd c1 = Eigen::MatrixXd::Zero(lay.total, vi.n_triples());
  for (int m = 0; m < vi.n_triples(); ++m) {
    const auto& tr = vi.triple(m);
    const auto& pol = *opts.options[tr.option].policy;
    if (pol.prob(tr.s, tr.a) <= 0.0)
      throw NumericalError("zero policy density at visited triple " + tr.s.to_string() +
                           " option " + std::to_string(tr.option) + " " + tr.a.to_string());
    const SegVec g = pol.log_grad(tr.s, tr.a);
    c1.col(m).segment(lay.offset[tr.option] + g.offset, g.v.size()) = vi.mu()[m] * g.v;
  }
  return c1;
}

Eigen::MatrixXd build_termination_constraint(const VisitIndex& vi, const OptionSet& opts,
                                             PiOmegaMode mode) {
  const ParamLayout lay = ParamLayout::terminations(opts);
  const auto pi = build_pi_matrix(vi, opts);
  const auto pi_omega = build_pi_omega(vi, opts, mode);
  Eigen::SparseMatrix<double> eye(vi.n_pairs(), vi.n_pairs());
  eye.setIdentity();
  // right factor (I - Pi_Omega) Pi, [L x M]
  const Eigen::SparseMatrix<double> right = (eye - pi_omega) * pi;

  // rows of B scaled by mu1: column l holds mu1[l] * grad beta_{w_l}(s_l)
  std::vector<Eigen::Triplet<double>> trip;
  for (int l = 0; l < vi.n_pairs(); ++l) {
    const auto& pr = vi.pair(l);
    const SegVec g = opts.options[pr.option].termination.grad(pr.s);
    const int base = lay.offset[pr.option] + g.offset;
    for (Eigen::Index j = 0; j < g.v.size(); ++j)
      trip.emplace_back(base + static_cast<int>(j), l, vi.mu1()[l] * g.v[j]);
  }
  Eigen::SparseMatrix<double> b_mu(lay.total, vi.n_pairs());
  b_mu.setFromTriplets(trip.begin(), trip.end());
  return Eigen::MatrixXd(b_mu * right);
}

namespace {

// drop all-zero rows; they cannot change the null space
Eigen::MatrixXd compress_rows(const Eigen::MatrixXd& a) {
  std::vector<int> keep;
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    if (a.row(r).cwiseAbs().maxCoeff() > 0.0) keep.push_back(static_cast<int>(r));
  Eigen::MatrixXd out(keep.size(), a.cols());
  for (size_t i = 0; i < keep.size(); ++i) out.row(i) = a.row(keep[i]);
  return out;
}

Eigen::MatrixXd column_range_reversed(const Eigen::MatrixXd& v, int first, int count) {
  Eigen::MatrixXd out(v.rows(), count);
  for (int j = 0; j < count; ++j) out.col(j) = v.col(first + count - 1 - j);
  return out;
}

}  // namespace

NullspaceResult qfeature_nullspace(const Eigen::MatrixXd& c1, const Eigen::MatrixXd& c2,
                                   int max_features, double sv_rel_tol) {
  const int m = static_cast<int>(c1.cols() > 0 ? c1.cols() : c2.cols());
  if (m == 0) throw DataError("qfeature_nullspace: empty visit index");
  Eigen::MatrixXd stacked(c1.rows() + c2.rows(), m);
  if (c1.rows() > 0) stacked.topRows(c1.rows()) = c1;
  if (c2.rows() > 0) stacked.bottomRows(c2.rows()) = c2;
  stacked = compress_rows(stacked);

  NullspaceResult res;
  if (stacked.rows() == 0) {
    // unconstrained: any orthonormal basis works
    res.null_dim = m;
    res.phi = Eigen::MatrixXd::Identity(m, std::min(m, max_features));
    return res;
  }

  const int k = static_cast<int>(stacked.rows());
  const double max_dim = static_cast<double>(std::max(k, m));

  if (m <= 1500 || k >= m) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    res.sigma_max = sv.size() > 0 ? sv[0] : 0.0;
    const double tol = max_dim * res.sigma_max * sv_rel_tol;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv[i] > tol) ++rank;
    res.numerical_rank = rank;
    res.null_dim = m - rank;
    if (res.null_dim <= 0)
      throw NumericalError(
          "constraints of full rank; more demonstrations or fewer parameters needed");
    const int keep = std::min(res.null_dim, max_features);
    // most-null direction first
    res.phi = column_range_reversed(svd.matrixV(), m - keep, keep);
    return res;
  }

  // Wide case: get singular values from the k x k Gram matrix, then build an
  // orthonormal complement of the row space.
  const Eigen::MatrixXd gram = stacked * stacked.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.info() != Eigen::Success)
    throw NumericalError("qfeature_nullspace: eigendecomposition failed");
  Eigen::VectorXd lambda = eig.eigenvalues();  // ascending
  res.sigma_max = std::sqrt(std::max(0.0, lambda[k - 1]));
  const double tol = max_dim * res.sigma_max * sv_rel_tol;
  int rank = 0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (std::sqrt(std::max(0.0, lambda[i])) > tol) ++rank;
  res.numerical_rank = rank;
  res.null_dim = m - rank;
  if (res.null_dim <= 0)
    throw NumericalError(
        "constraints of full rank; more demonstrations or fewer parameters needed");

  // right singular vectors of the range: V_r = A^T U_r / sigma (descending order)
  Eigen::MatrixXd vr(m, rank);
  for (int i = 0; i < rank; ++i) {
    const int src = k - 1 - i;
    vr.col(i) = stacked.transpose() * eig.eigenvectors().col(src) / std::sqrt(lambda[src]);
  }
  const int keep = std::min(res.null_dim, max_features);
  Rng rng(0x0f1e2d3c4b5a6978ull);  // fixed seed keeps the basis deterministic
  Eigen::MatrixXd basis(m, keep);
  for (int j = 0; j < keep; ++j)
    for (int i = 0; i < m; ++i) basis(i, j) = rng.normal();
  // two projection passes push the row-space component to rounding level
  basis -= vr * (vr.transpose() * basis);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr1(basis);
  basis = qr1.householderQ() * Eigen::MatrixXd::Identity(m, keep);
  basis -= vr * (vr.transpose() * basis);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr2(basis);
  res.phi = qr2.householderQ() * Eigen::MatrixXd::Identity(m, keep);
  return res;
}

}  // namespace optirl
