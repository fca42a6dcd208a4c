#ifndef OPTIRL_ENV_SIM_HPP
#define OPTIRL_ENV_SIM_HPP

#include <memory>

#include "optirl/common.hpp"
#include "optirl/mdp.hpp"

namespace optirl {

struct StepResult {
  StatePoint next;
  double reward = 0.0;
  bool done = false;
};

// Minimal simulation surface shared by rollout generation and evaluation.
// Implementations are value objects; every worker owns a clone and an RNG.
class EnvSim {
 public:
  virtual ~EnvSim() = default;
  virtual StatePoint initial_state(Rng& rng) const = 0;
  virtual StepResult step(const StatePoint& s, const ActionPoint& a, Rng& rng) const = 0;
  virtual double gamma() const = 0;
  virtual std::unique_ptr<EnvSim> clone() const = 0;
};

}  // namespace optirl

#endif  // OPTIRL_ENV_SIM_HPP
