#include "optirl/trajectory_derivs.hpp"

#include <cmath>

#include "optirl/common.hpp"

namespace optirl {

TrajectoryDerivatives trajectory_log_derivatives(const Trajectory& traj,
                                                 const OptionSet& opts) {
  const ParamLayout ltheta = ParamLayout::policies(opts);
  const ParamLayout lvar = ParamLayout::terminations(opts);
  TrajectoryDerivatives d;
  d.g_theta = Eigen::VectorXd::Zero(ltheta.total);
  d.h_theta = Eigen::MatrixXd::Zero(ltheta.total, ltheta.total);
  d.g_vartheta = Eigen::VectorXd::Zero(lvar.total);
  d.h_vartheta = Eigen::MatrixXd::Zero(lvar.total, lvar.total);

  for (size_t t = 0; t < traj.steps.size(); ++t) {
    const Step& st = traj.steps[t];
    const auto& pol = *opts.options[st.option].policy;
    const SegVec g = pol.log_grad(st.state, st.action);
    d.g_theta.segment(ltheta.offset[st.option] + g.offset, g.v.size()) += g.v;
    const SegMat h = pol.log_hessian(st.state, st.action);
    d.h_theta.block(ltheta.offset[st.option] + h.offset, ltheta.offset[st.option] + h.offset,
                    h.m.rows(), h.m.cols()) += h.m;
    if (t >= 1) {
      const int prev = traj.steps[t - 1].option;
      const auto& term = opts.options[prev].termination;
      const auto [tg, th] = term.log_grad_hessian(st.state, st.term_flag);
      d.g_vartheta.segment(lvar.offset[prev] + tg.offset, tg.v.size()) += tg.v;
      d.h_vartheta.block(lvar.offset[prev] + th.offset, lvar.offset[prev] + th.offset,
                         th.m.rows(), th.m.cols()) += th.m;
    }
  }
  return d;
}

double trajectory_log_prob_params(const Trajectory& traj, const OptionSet& opts) {
  double lp = 0.0;
  for (size_t t = 0; t < traj.steps.size(); ++t) {
    const Step& st = traj.steps[t];
    const double p = opts.options[st.option].policy->prob(st.state, st.action);
    if (p <= 0.0) throw NumericalError("zero policy probability at step " + std::to_string(t));
    lp += std::log(p);
    if (t >= 1) {
      const int prev = traj.steps[t - 1].option;
      const double beta = opts.options[prev].termination.beta(st.state);
      if (beta <= 0.0 || beta >= 1.0)
        throw NumericalError("termination saturated at step " + std::to_string(t));
      lp += std::log(st.term_flag ? beta : 1.0 - beta);
    }
  }
  return lp;
}

}  // namespace optirl
