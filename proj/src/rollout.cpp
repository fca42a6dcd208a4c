#include "optirl/rollout.hpp"

namespace optirl {

ExecutableOptions executable_from_option_set(
    const OptionSet& opts, double epsilon,
    std::function<ActionPoint(const StatePoint&, Rng&)> random_action) {
  if (epsilon < 0.0 || epsilon > 1.0)
    throw ConfigError("executable_from_option_set: epsilon in [0,1]");
  if (epsilon > 0.0 && !random_action)
    throw ConfigError("executable_from_option_set: epsilon > 0 needs a random action");
  ExecutableOptions exec;
  exec.n_options = opts.n_options();
  auto shared = std::make_shared<OptionSet>(opts);
  exec.select_option = [shared](const StatePoint& s, Rng& rng) {
    return shared->policy_over_options->sample(s, rng);
  };
  for (int w = 0; w < opts.n_options(); ++w) {
    exec.act.push_back([shared, w, epsilon, random_action](const StatePoint& s, Rng& rng) {
      if (epsilon > 0.0 && rng.uniform() < epsilon) return random_action(s, rng);
      return shared->options[w].policy->sample(s, rng);
    });
    exec.terminate.push_back([shared, w](const StatePoint& s, Rng& rng) {
      return rng.uniform() < shared->options[w].termination.beta(s);
    });
  }
  return exec;
}

std::vector<Trajectory> rollout_options(const EnvSim& env, const ExecutableOptions& exec,
                                        int horizon, int n_episodes, std::uint64_t seed) {
  if (horizon < 1 || n_episodes < 1) throw ConfigError("rollout_options: bad sizes");
  Rng base(seed);
  std::vector<Trajectory> out;
  out.reserve(n_episodes);
  for (int ep = 0; ep < n_episodes; ++ep) {
    Rng rng = base.derive(static_cast<std::uint64_t>(ep));
    Trajectory traj;
    traj.episode_id = ep;
    StatePoint s = env.initial_state(rng);
    int option = exec.select_option(s, rng);
    bool term_flag = true;
    for (int t = 0; t < horizon; ++t) {
      const ActionPoint a = exec.act[option](s, rng);
      traj.steps.push_back({option, s, a, term_flag});
      const StepResult res = env.step(s, a, rng);
      s = res.next;
      if (res.done || t + 1 == horizon) {
        traj.terminal_state = s;
        break;
      }
      if (exec.terminate[option](s, rng)) {
        term_flag = true;
        option = exec.select_option(s, rng);
      } else {
        term_flag = false;
      }
    }
    out.push_back(std::move(traj));
  }
  return out;
}

Trajectory rollout_flat(const EnvSim& env,
                        const std::function<ActionPoint(const StatePoint&, Rng&)>& policy,
                        int horizon, Rng& rng) {
  Trajectory traj;
  StatePoint s = env.initial_state(rng);
  for (int t = 0; t < horizon; ++t) {
    const ActionPoint a = policy(s, rng);
    traj.steps.push_back({0, s, a, t == 0});
    const StepResult res = env.step(s, a, rng);
    s = res.next;
    if (res.done) break;
  }
  traj.terminal_state = s;
  return traj;
}

}  // namespace optirl
