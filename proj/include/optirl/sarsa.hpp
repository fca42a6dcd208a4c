#ifndef OPTIRL_SARSA_HPP
#define OPTIRL_SARSA_HPP

#include <functional>

#include "optirl/env_four_rooms.hpp"

namespace optirl {

// Learner-side reward; sees the transition so sparse goal rewards and
// recovered (s, a) rewards share one signature.
using LearnerReward =
    std::function<double(const StatePoint& s, const ActionPoint& a, const StatePoint& next)>;

LearnerReward default_reward(const FourRoomsEnv& env);

struct SarsaConfig {
  int episodes = 2000;
  int horizon = 500;
  double lr = 0.1;
  double temp_start = 1.0;
  double temp_end = 0.05;
  std::uint64_t seed = 1;
};

struct SarsaResult {
  Eigen::MatrixXd q;           // n_states x n_actions
  std::vector<double> curve;   // per-episode discounted default-reward return
};

// Tabular SARSA with Boltzmann exploration on the supplied reward. The curve
// always logs the environment's default reward so runs under different
// rewards stay comparable.
SarsaResult sarsa_train(const FourRoomsEnv& env, const LearnerReward& reward,
                        const SarsaConfig& cfg);

// Greedy policy of a Q table.
std::function<ActionPoint(const StatePoint&, Rng&)> greedy_policy(Eigen::MatrixXd q);

}  // namespace optirl

#endif  // OPTIRL_SARSA_HPP
