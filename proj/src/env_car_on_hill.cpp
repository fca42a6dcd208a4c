#include "optirl/env_car_on_hill.hpp"

#include <cmath>

namespace optirl {

double hill_height(double p) {
  if (p < 0.0) return p * p + p;
  return p / std::sqrt(1.0 + 5.0 * p * p);
}

double hill_slope(double p) {
  if (p < 0.0) return 2.0 * p + 1.0;
  return std::pow(1.0 + 5.0 * p * p, -1.5);
}

double hill_curvature(double p) {
  if (p < 0.0) return 2.0;
  return -15.0 * p * std::pow(1.0 + 5.0 * p * p, -2.5);
}

CarOnHillEnv::CarOnHillEnv(double integration_dt, double decision_dt, double gamma)
    : dt_(integration_dt), decision_dt_(decision_dt), gamma_(gamma) {
  if (dt_ <= 0 || decision_dt_ < dt_) throw ConfigError("CarOnHillEnv: bad time steps");
  if (gamma_ < 0.0 || gamma_ >= 1.0) throw ConfigError("CarOnHillEnv: gamma in [0,1)");
}

double CarOnHillEnv::reward_at(double p_next, double v_next) {
  if (p_next < kPMin || std::abs(v_next) > kVMax) return -1.0;
  if (p_next > kPMax && std::abs(v_next) <= kVMax) return 1.0;
  return 0.0;
}

StepResult CarOnHillEnv::step_from(double p, double v, double a) const {
  constexpr double kMass = 1.0;
  constexpr double kGravity = 9.81;
  a = std::min(kAMax, std::max(kAMin, a));
  if (!std::isfinite(p) || !std::isfinite(v))
    throw NumericalError("CarOnHillEnv: non-finite state");
  const int substeps = static_cast<int>(std::lround(decision_dt_ / dt_));
  bool done = false;
  for (int i = 0; i < substeps; ++i) {
    const double hp = hill_slope(p);
    const double hpp = hill_curvature(p);
    const double denom = 1.0 + hp * hp;
    const double vdot =
        a / (kMass * denom) - kGravity * hp / denom - v * v * hp * hpp / denom;
    p += dt_ * v;
    v += dt_ * vdot;
    if (p < kPMin || p > kPMax || std::abs(v) > kVMax) {
      done = true;
      break;
    }
  }
  StepResult out;
  Eigen::VectorXd ns(2);
  ns << p, v;
  out.next = StatePoint::vec(std::move(ns));
  out.done = done;
  out.reward = reward_at(p, v);
  return out;
}

StepResult CarOnHillEnv::step(const StatePoint& s, const ActionPoint& a, Rng&) const {
  const Eigen::VectorXd& x = s.values();
  if (x.size() != 2) throw DataError("CarOnHillEnv: state must be (p, v)");
  return step_from(x[0], x[1], a.scalar_value());
}

}  // namespace optirl
