#ifndef OPTIRL_ROLLOUT_HPP
#define OPTIRL_ROLLOUT_HPP

#include <functional>
#include <vector>

#include "optirl/env_sim.hpp"
#include "optirl/option_set.hpp"

namespace optirl {

// Demo-time executable options. Terminations draw a coin so hard (0/1)
// hand-crafted terminations and soft sigmoid ones share one interface.
struct ExecutableOptions {
  int n_options = 0;
  std::function<int(const StatePoint&, Rng&)> select_option;
  std::vector<std::function<ActionPoint(const StatePoint&, Rng&)>> act;
  std::vector<std::function<bool(const StatePoint&, Rng&)>> terminate;
};

// Samples from the parametrized option set; with probability epsilon the
// action is drawn from random_action instead of the intra-option policy.
ExecutableOptions executable_from_option_set(
    const OptionSet& opts, double epsilon,
    std::function<ActionPoint(const StatePoint&, Rng&)> random_action);

// Call-and-return execution: select an option, follow its intra-option
// policy, re-select whenever the termination fires on arrival. b_t records
// the termination of the previous option, so b_0 = 1. Episodes truncate at
// the horizon; each episode runs on an RNG stream derived from
// (seed, episode index), so results do not depend on scheduling.
std::vector<Trajectory> rollout_options(const EnvSim& env, const ExecutableOptions& exec,
                                        int horizon, int n_episodes, std::uint64_t seed);

// Flat-policy rollout used by behavioral cloning and evaluation.
Trajectory rollout_flat(const EnvSim& env,
                        const std::function<ActionPoint(const StatePoint&, Rng&)>& policy,
                        int horizon, Rng& rng);

}  // namespace optirl

#endif  // OPTIRL_ROLLOUT_HPP
