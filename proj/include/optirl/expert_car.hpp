#ifndef OPTIRL_EXPERT_CAR_HPP
#define OPTIRL_EXPERT_CAR_HPP

#include "optirl/env_car_on_hill.hpp"
#include "optirl/rollout.hpp"

namespace optirl {

// Subgoal 1: enough rightward speed near the valley bottom. Subgoal 2 is the
// task goal itself. Thresholds are configuration values.
struct CarSubgoals {
  double p_min = -0.05;
  double v_min = 1.8;

  bool subgoal1(const StatePoint& s) const {
    return s.values()[0] >= p_min && s.values()[1] >= v_min;
  }
};

// Deterministic policy on a uniform (p, v) grid with a finite action set.
struct GridPolicy {
  int np = 0, nv = 0;
  std::vector<double> actions;      // candidate set, default {-4, +4}
  std::vector<int> choice;          // np*nv entries, index into actions

  double act(double p, double v) const;
  ActionPoint operator()(const StatePoint& s) const {
    return ActionPoint::scalar(act(s.values()[0], s.values()[1]));
  }
};

struct CarFqiConfig {
  int n_transitions = 60000;
  int iterations = 80;
  int grid_p = 56;
  int grid_v = 56;
  std::vector<double> actions = {-4.0, 4.0};
  int episode_horizon = 300;
  std::uint64_t seed = 7;
};

// Fitted-Q iteration on the sub-MDP for the given subgoal (1 or 2), with a
// piecewise-constant (grid-averaging) regressor. Sub-MDP 1 terminates with
// +1 on achieving subgoal 1; both terminate with -1 on leaving the state
// bounds. Throws NumericalError on divergence.
GridPolicy fqi_suboption_train(const CarOnHillEnv& env, int subgoal,
                               const CarSubgoals& goals, const CarFqiConfig& cfg);

// Hand-crafted expert: option 0 runs the subgoal-1 policy until subgoal 1 is
// achieved (hard termination), option 1 drives to the top and never
// terminates in-episode. The policy-over-options is the deterministic rule
// "option 0 before subgoal 1, option 1 after". With probability epsilon an
// action is drawn uniformly from the finite action set instead.
ExecutableOptions car_expert_executable(const GridPolicy& pol1, const GridPolicy& pol2,
                                        const CarSubgoals& goals, double epsilon,
                                        const std::vector<double>& actions);

// The same deterministic rule as a PolicyOverOptions for the fitted set.
std::unique_ptr<PolicyOverOptions> car_rule_policy_over_options(const CarSubgoals& goals);

}  // namespace optirl

#endif  // OPTIRL_EXPERT_CAR_HPP
