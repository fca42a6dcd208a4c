#include "optirl/maxent.hpp"

#include <cmath>

#include "optirl/common.hpp"

namespace optirl {

namespace {

double logsumexp(const Eigen::VectorXd& v) {
  const double m = v.maxCoeff();
  return m + std::log((v.array() - m).exp().sum());
}

struct Backward {
  // stage policies, outermost index t = 0..horizon-1
  std::vector<Eigen::MatrixXd> policy;
};

Backward soft_backward(const Eigen::VectorXd& reward,
                       const std::vector<Eigen::MatrixXd>& transition,
                       const std::vector<bool>& terminal, int horizon,
                       std::vector<double>* diffs) {
  const int n_s = static_cast<int>(reward.size());
  const int n_a = static_cast<int>(transition.size());
  Eigen::VectorXd v = reward;  // V_T
  Backward bw;
  bw.policy.assign(horizon, Eigen::MatrixXd::Zero(n_s, n_a));
  for (int t = horizon - 1; t >= 0; --t) {
    Eigen::VectorXd v_next(n_s);
    for (int s = 0; s < n_s; ++s) {
      if (terminal[s]) {
        v_next[s] = reward[s];
        bw.policy[t].row(s).setConstant(1.0 / n_a);
        continue;
      }
      Eigen::VectorXd q(n_a);
      for (int a = 0; a < n_a; ++a) q[a] = reward[s] + transition[a].row(s).dot(v);
      const double lse = logsumexp(q);
      v_next[s] = lse;
      bw.policy[t].row(s) = (q.array() - lse).exp();
    }
    if (diffs) diffs->push_back((v_next - v).cwiseAbs().maxCoeff());
    if (!v_next.allFinite()) throw NumericalError("maxent: non-finite soft values");
    v = std::move(v_next);
  }
  return bw;
}

}  // namespace

std::vector<double> soft_value_diffs(const Eigen::VectorXd& reward,
                                     const std::vector<Eigen::MatrixXd>& transition,
                                     const std::vector<int>& terminal_states, int horizon) {
  std::vector<bool> terminal(reward.size(), false);
  for (int s : terminal_states) terminal[s] = true;
  std::vector<double> diffs;
  soft_backward(reward, transition, terminal, horizon, &diffs);
  return diffs;
}

MaxEntResult maxent_irl(const std::vector<Trajectory>& demos,
                        const std::vector<Eigen::MatrixXd>& transition,
                        const std::vector<int>& terminal_states, const MaxEntConfig& cfg) {
  if (demos.empty()) throw DataError("maxent_irl: no demonstrations");
  if (transition.empty()) throw DataError("maxent_irl: no transition model");
  const int n_s = static_cast<int>(transition[0].rows());
  const int n_a = static_cast<int>(transition.size());
  std::vector<bool> terminal(n_s, false);
  for (int s : terminal_states) terminal[s] = true;

  // empirical feature expectations and start distribution
  Eigen::VectorXd f_demo = Eigen::VectorXd::Zero(n_s);
  Eigen::VectorXd start = Eigen::VectorXd::Zero(n_s);
  for (const auto& traj : demos) {
    start[traj.steps[0].state.id()] += 1.0;
    for (const auto& st : traj.steps) f_demo[st.state.id()] += 1.0;
    if (traj.terminal_state.is_tabular()) f_demo[traj.terminal_state.id()] += 1.0;
  }
  f_demo /= static_cast<double>(demos.size());
  start /= start.sum();

  MaxEntResult res;
  res.reward = Eigen::VectorXd::Zero(n_s);
  for (int it = 0; it < cfg.iterations; ++it) {
    const Backward bw = soft_backward(res.reward, transition, terminal, cfg.horizon, nullptr);
    // forward occupancy; absorbed mass is counted once on arrival
    Eigen::VectorXd visit = Eigen::VectorXd::Zero(n_s);
    Eigen::VectorXd d = start;
    for (int t = 0; t < cfg.horizon; ++t) {
      visit += d;
      Eigen::VectorXd d2 = Eigen::VectorXd::Zero(n_s);
      for (int s = 0; s < n_s; ++s) {
        if (d[s] <= 0.0 || terminal[s]) continue;
        for (int a = 0; a < n_a; ++a) {
          const double pa = bw.policy[t](s, a);
          if (pa <= 0.0) continue;
          d2 += d[s] * pa * transition[a].row(s).transpose();
        }
      }
      d = std::move(d2);
      if (d.sum() <= 1e-12) {
        visit += d;
        break;
      }
    }
    // whatever mass reached terminals during the loop is already in visit
    const Eigen::VectorXd grad = f_demo - visit;
    res.grad_norm = grad.cwiseAbs().maxCoeff();
    res.grad_curve.push_back(res.grad_norm);
    res.reward += cfg.lr * grad;
  }
  return res;
}

}  // namespace optirl
