#include "optirl/expert_fit.hpp"

#include <Eigen/Dense>

#include "optirl/common.hpp"

namespace optirl {

Eigen::VectorXd ridge_solve(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                            double ridge) {
  const int d = static_cast<int>(x.cols());
  Eigen::MatrixXd gram = x.transpose() * x;
  gram.diagonal().array() += ridge;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  const Eigen::VectorXd w = ldlt.solve(x.transpose() * y);
  if (ldlt.info() != Eigen::Success || !w.allFinite())
    throw NumericalError("ridge_solve: singular design matrix; try a larger ridge");
  (void)d;
  return w;
}

Eigen::VectorXd logistic_fit(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                             double ridge, int iterations) {
  const int n = static_cast<int>(x.rows());
  const int d = static_cast<int>(x.cols());
  if (n != static_cast<int>(labels.size()))
    throw DataError("logistic_fit: label count mismatch");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
  for (int it = 0; it < iterations; ++it) {
    const Eigen::VectorXd z = x * w;
    const Eigen::VectorXd p = 1.0 / (1.0 + (-z.array()).exp());
    Eigen::VectorXd grad = -ridge * w;
    for (int i = 0; i < n; ++i) grad += (labels[i] - p[i]) * x.row(i).transpose();
    Eigen::MatrixXd hess = ridge * Eigen::MatrixXd::Identity(d, d);
    for (int i = 0; i < n; ++i) {
      const double wgt = std::max(p[i] * (1.0 - p[i]), 1e-12);
      hess += wgt * (x.row(i).transpose() * x.row(i));
    }
    const Eigen::VectorXd step = Eigen::LDLT<Eigen::MatrixXd>(hess).solve(grad);
    if (!step.allFinite()) throw NumericalError("logistic_fit: singular Hessian");
    w += step;
    if (step.cwiseAbs().maxCoeff() < 1e-10) break;
  }
  return w;
}

OptionSet fit_expert_params(const std::vector<Trajectory>& demos, int n_options,
                            const FitConfig& cfg,
                            std::unique_ptr<PolicyOverOptions> policy_over_options) {
  if (demos.empty()) throw DataError("fit_expert_params: no demonstrations");
  const int n_feat = cfg.grid.size();

  OptionSet out;
  out.policy_over_options = std::move(policy_over_options);
  for (int w = 0; w < n_options; ++w) {
    // policy fit: actions regressed on features over the option's steps
    std::vector<Eigen::VectorXd> rows;
    std::vector<double> targets;
    for (const auto& traj : demos)
      for (const auto& st : traj.steps)
        if (st.option == w) {
          rows.push_back(cfg.grid.features(st.state));
          targets.push_back(st.action.scalar_value());
        }
    if (rows.empty())
      throw DataError("fit_expert_params: no demonstration steps for option " +
                      std::to_string(w));
    Eigen::MatrixXd x(rows.size(), n_feat);
    Eigen::VectorXd y(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
      x.row(i) = rows[i].transpose();
      y[i] = targets[i];
    }
    OptionSpec spec;
    auto pol = std::make_unique<GaussianRbfPolicy>(cfg.grid, cfg.sigma2);
    pol->set_params(ridge_solve(x, y, cfg.ridge_policy));
    spec.policy = std::move(pol);

    // termination fit: b_{t} labels at arrival states while w was running
    std::vector<Eigen::VectorXd> trows;
    std::vector<int> tlabels;
    for (const auto& traj : demos)
      for (size_t t = 1; t < traj.steps.size(); ++t)
        if (traj.steps[t - 1].option == w) {
          trows.push_back(cfg.grid.features(traj.steps[t].state));
          tlabels.push_back(traj.steps[t].term_flag ? 1 : 0);
        }
    spec.termination = SigmoidTermination::rbf(cfg.grid);
    if (!trows.empty()) {
      Eigen::MatrixXd tx(trows.size(), n_feat);
      for (size_t i = 0; i < trows.size(); ++i) tx.row(i) = trows[i].transpose();
      spec.termination.set_params(
          logistic_fit(tx, tlabels, cfg.ridge_termination, cfg.logistic_iterations));
    }
    out.options.push_back(std::move(spec));
  }
  return out;
}

GaussianRbfPolicy bc_fit(const std::vector<Trajectory>& demos, const FitConfig& cfg) {
  if (demos.empty()) throw DataError("bc_fit: no demonstrations");
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> targets;
  for (const auto& traj : demos)
    for (const auto& st : traj.steps) {
      rows.push_back(cfg.grid.features(st.state));
      targets.push_back(st.action.scalar_value());
    }
  Eigen::MatrixXd x(rows.size(), cfg.grid.size());
  Eigen::VectorXd y(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    x.row(i) = rows[i].transpose();
    y[i] = targets[i];
  }
  GaussianRbfPolicy pol(cfg.grid, cfg.sigma2);
  pol.set_params(ridge_solve(x, y, cfg.ridge_policy));
  return pol;
}

}  // namespace optirl
