#ifndef OPTIRL_EVALUATE_HPP
#define OPTIRL_EVALUATE_HPP

#include <functional>
#include <string>
#include <vector>

#include "optirl/env_sim.hpp"

namespace optirl {

struct Evaluation {
  double mean = 0.0;
  double stderr_ = 0.0;
  int episodes = 0;
};

// Monte-Carlo average of the environment's own (default-reward) discounted
// returns under the given policy.
Evaluation evaluate_policy(const EnvSim& env,
                           const std::function<ActionPoint(const StatePoint&, Rng&)>& policy,
                           int n_episodes, std::uint64_t seed, int horizon = 500);

// Curve CSV: run,iteration_or_episode,mean_return,stderr
struct CurvePoint {
  std::string run;
  int index = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
};

void write_curves(const std::string& path, const std::vector<CurvePoint>& points);
std::vector<CurvePoint> read_curves(const std::string& path);

// Mean and pooled standard error per index across repetition curves.
std::vector<CurvePoint> aggregate_curves(const std::string& run,
                                         const std::vector<std::vector<double>>& reps);

}  // namespace optirl

#endif  // OPTIRL_EVALUATE_HPP
