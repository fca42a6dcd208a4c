#ifndef OPTIRL_EXPERT_FOUR_ROOMS_HPP
#define OPTIRL_EXPERT_FOUR_ROOMS_HPP

#include "optirl/env_four_rooms.hpp"
#include "optirl/option_set.hpp"

namespace optirl {

struct OptionCriticConfig {
  int n_options = 4;
  int max_episodes = 30000;
  int horizon = 500;
  double lr_critic = 0.5;
  double lr_theta = 0.25;
  double lr_vartheta = 0.25;
  double deliberation_cost = 0.01;
  double temp_theta = 1.0;       // Boltzmann temperature of intra-option policies
  double temp_omega_start = 1.0; // policy-over-options softmax temperature
  double temp_omega_end = 0.1;
  double goal_return_threshold = -40.0;  // mean greedy discounted return
  int check_every = 1000;
  int check_episodes = 20;
  std::uint64_t seed = 1;
};

// Tabular option-critic: intra-option Q-learning critic with Boltzmann
// actors, sigmoid termination gradient updates, and a softmax
// policy-over-options on the option values. Returns the snapshot option set
// once greedy execution clears the return threshold; throws NumericalError
// with the learning curve appended if it never does.
OptionSet option_critic_train(const FourRoomsEnv& env, const OptionCriticConfig& cfg);

// Greedy execution quality of an option set: mean discounted default-reward
// return over rollouts from upper-left starts.
double greedy_option_return(const FourRoomsEnv& env, const OptionSet& opts, int episodes,
                            int horizon, std::uint64_t seed);

}  // namespace optirl

#endif  // OPTIRL_EXPERT_FOUR_ROOMS_HPP
