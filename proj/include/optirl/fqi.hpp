#ifndef OPTIRL_FQI_HPP
#define OPTIRL_FQI_HPP

#include <functional>

#include "optirl/env_car_on_hill.hpp"
#include "optirl/regressors.hpp"

namespace optirl {

struct CarTransition {
  Eigen::Vector2d s;
  double a = 0.0;
  Eigen::Vector2d s2;
  bool done = false;
};

// reward assigned to a transition by the arm under evaluation
using TransitionReward = std::function<double(const CarTransition&)>;

// Uniform-random exploration episodes from random in-bounds starts.
std::vector<CarTransition> collect_transitions(const CarOnHillEnv& env, int n,
                                               int horizon, std::uint64_t seed);

struct FqiConfig {
  int iterations = 30;
  int n_action_grid = 11;          // candidate actions for the max over [-4, 4]
  std::string regressor = "extra_trees";
  std::uint64_t seed = 1;
  int eval_episodes = 1;           // deterministic env: one rollout suffices
  int eval_horizon = 300;
  double eval_start_jitter = 0.0;  // uniform jitter around (p0, v0)
};

struct FqiResult {
  std::function<double(double p, double v, double a)> q;
  std::function<ActionPoint(const StatePoint&, Rng&)> policy;  // greedy over the grid
  std::vector<double> curve;  // mean default-reward return per iteration
};

// Batch fitted-Q iteration on the supplied transitions and reward; the curve
// evaluates the greedy policy on the real environment's default reward after
// every iteration.
FqiResult fqi_train(const CarOnHillEnv& env, const std::vector<CarTransition>& transitions,
                    const TransitionReward& reward, const FqiConfig& cfg);

}  // namespace optirl

#endif  // OPTIRL_FQI_HPP
