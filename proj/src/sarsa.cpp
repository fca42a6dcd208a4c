#include "optirl/sarsa.hpp"

#include <cmath>

namespace optirl {

LearnerReward default_reward(const FourRoomsEnv& env) {
  const int goal = env.goal_cell();
  return [goal](const StatePoint&, const ActionPoint&, const StatePoint& next) {
    return next.id() == goal ? 0.0 : -1.0;
  };
}

namespace {

int boltzmann_pick(const Eigen::VectorXd& q, double temp, Rng& rng) {
  Eigen::VectorXd z = q / temp;
  Eigen::VectorXd p = (z.array() - z.maxCoeff()).exp();
  p /= p.sum();
  double u = rng.uniform();
  for (Eigen::Index a = 0; a < p.size(); ++a) {
    u -= p[a];
    if (u <= 0) return static_cast<int>(a);
  }
  return static_cast<int>(p.size()) - 1;
}

}  // namespace

SarsaResult sarsa_train(const FourRoomsEnv& env, const LearnerReward& reward,
                        const SarsaConfig& cfg) {
  const int n_s = env.n_cells();
  const int n_a = FourRoomsEnv::kActions;
  SarsaResult res;
  res.q = Eigen::MatrixXd::Zero(n_s, n_a);
  res.curve.reserve(cfg.episodes);
  Rng rng(cfg.seed);
  const double gamma = env.gamma();
  const LearnerReward log_reward = default_reward(env);

  for (int ep = 0; ep < cfg.episodes; ++ep) {
    const double frac = cfg.episodes > 1 ? double(ep) / (cfg.episodes - 1) : 1.0;
    const double temp = cfg.temp_start * std::pow(cfg.temp_end / cfg.temp_start, frac);
    StatePoint s = env.initial_state(rng);
    int a = boltzmann_pick(res.q.row(s.id()).transpose(), temp, rng);
    double logged = 0.0, disc = 1.0;
    for (int t = 0; t < cfg.horizon; ++t) {
      const StepResult step = env.step(s, ActionPoint::tabular(a), rng);
      const double r = reward(s, ActionPoint::tabular(a), step.next);
      logged += disc * log_reward(s, ActionPoint::tabular(a), step.next);
      disc *= gamma;
      if (step.done) {
        res.q(s.id(), a) += cfg.lr * (r - res.q(s.id(), a));
        break;
      }
      const int a2 = boltzmann_pick(res.q.row(step.next.id()).transpose(), temp, rng);
      res.q(s.id(), a) +=
          cfg.lr * (r + gamma * res.q(step.next.id(), a2) - res.q(s.id(), a));
      s = step.next;
      a = a2;
    }
    res.curve.push_back(logged);
  }
  return res;
}

std::function<ActionPoint(const StatePoint&, Rng&)> greedy_policy(Eigen::MatrixXd q) {
  auto table = std::make_shared<Eigen::MatrixXd>(std::move(q));
  return [table](const StatePoint& s, Rng&) {
    Eigen::Index best = 0;
    table->row(s.id()).maxCoeff(&best);
    return ActionPoint::tabular(static_cast<int>(best));
  };
}

}  // namespace optirl
