#ifndef OPTIRL_ENV_CAR_ON_HILL_HPP
#define OPTIRL_ENV_CAR_ON_HILL_HPP

#include "optirl/env_sim.hpp"

namespace optirl {

// Hill profile: p^2 + p for p < 0, p / sqrt(1 + 5 p^2) for p >= 0.
double hill_height(double p);
double hill_slope(double p);
double hill_curvature(double p);

// Car-on-the-Hill with the usual constants (m = 1, g = 9.81). Dynamics are
// integrated with forward Euler at integration_dt for decision_dt seconds per
// action; every substep checks the bounds so an exit ends the step early.
// Reward depends on the post-step state: -1 when p < -1 or |v| > 3, +1 when
// p > 1 with |v| <= 3, else 0.
class CarOnHillEnv final : public EnvSim {
 public:
  CarOnHillEnv(double integration_dt = 1e-3, double decision_dt = 0.1,
               double gamma = 0.95);

  static constexpr double kPMin = -1.0, kPMax = 1.0;
  static constexpr double kVMin = -3.0, kVMax = 3.0;
  static constexpr double kAMin = -4.0, kAMax = 4.0;

  double p0() const { return -0.5; }
  double v0() const { return 0.0; }
  double integration_dt() const { return dt_; }
  double decision_dt() const { return decision_dt_; }

  static double reward_at(double p_next, double v_next);
  static bool success(double p, double v) { return p > kPMax && std::abs(v) <= kVMax; }

  // deterministic dynamics; rng unused
  StepResult step_from(double p, double v, double a) const;

  StatePoint initial_state(Rng&) const override {
    Eigen::VectorXd s(2);
    s << p0(), v0();
    return StatePoint::vec(std::move(s));
  }
  StepResult step(const StatePoint& s, const ActionPoint& a, Rng&) const override;
  double gamma() const override { return gamma_; }
  std::unique_ptr<EnvSim> clone() const override {
    return std::make_unique<CarOnHillEnv>(*this);
  }

 private:
  double dt_;
  double decision_dt_;
  double gamma_;
};

}  // namespace optirl

#endif  // OPTIRL_ENV_CAR_ON_HILL_HPP
