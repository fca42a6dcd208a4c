#include "optirl/mdp.hpp"

#include <cmath>
#include <sstream>

#include "optirl/common.hpp"
#include "optirl/option_set.hpp"

namespace optirl {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t vec_key(const Eigen::VectorXd& v, double quantum) {
  std::uint64_t h = 0x243f6a8885a308d3ull;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    h = mix(h, static_cast<std::uint64_t>(std::llround(v[i] / quantum)));
  return h;
}

}  // namespace

std::uint64_t StatePoint::hash_key(double quantum) const {
  if (is_tabular()) return mix(0x1234567887654321ull, static_cast<std::uint64_t>(id_));
  return vec_key(vec_, quantum);
}

std::uint64_t ActionPoint::hash_key(double quantum) const {
  if (is_tabular()) return mix(0xabcdef0110fedcbaull, static_cast<std::uint64_t>(id_));
  return vec_key(vec_, quantum);
}

std::string StatePoint::to_string() const {
  std::ostringstream os;
  if (is_tabular()) {
    os << "s#" << id_;
  } else {
    os << "s(";
    for (Eigen::Index i = 0; i < vec_.size(); ++i) os << (i ? "," : "") << vec_[i];
    os << ")";
  }
  return os.str();
}

std::string ActionPoint::to_string() const {
  std::ostringstream os;
  if (is_tabular()) {
    os << "a#" << id_;
  } else {
    os << "a(";
    for (Eigen::Index i = 0; i < vec_.size(); ++i) os << (i ? "," : "") << vec_[i];
    os << ")";
  }
  return os.str();
}

double discounted_return(const Trajectory& traj, const RewardFn& reward, double gamma) {
  if (traj.steps.empty()) throw DataError("discounted_return: empty trajectory");
  double total = 0.0;
  double w = 1.0;
  for (size_t t = 0; t < traj.steps.size(); ++t) {
    const Step& st = traj.steps[t];
    const double r = reward(st.state, st.option, st.action);
    if (!std::isfinite(r))
      throw NumericalError("reward undefined at step " + std::to_string(t));
    total += w * r;
    w *= gamma;
  }
  return total;
}

ValidationReport validate_trajectory(const Trajectory& traj, const OptionSet& opts) {
  ValidationReport rep;
  auto add = [&rep](int t, const std::string& msg) { rep.violations.push_back({t, msg}); };
  if (traj.steps.empty()) {
    add(-1, "trajectory has no steps");
    return rep;
  }
  if (!traj.steps[0].term_flag) add(0, "b_0 must be 1 (first option freshly selected)");
  const int n_opt = opts.n_options();
  for (size_t t = 0; t < traj.steps.size(); ++t) {
    const Step& st = traj.steps[t];
    if (st.option < 0 || st.option >= n_opt)
      add(static_cast<int>(t), "option index " + std::to_string(st.option) +
                                   " out of range (have " + std::to_string(n_opt) + ")");
    if (t > 0 && !st.term_flag && st.option != traj.steps[t - 1].option)
      add(static_cast<int>(t), "term_flag is 0 but option changed from " +
                                   std::to_string(traj.steps[t - 1].option) + " to " +
                                   std::to_string(st.option));
    if (st.option >= 0 && st.option < n_opt) {
      const auto& spec = opts.options[st.option];
      try {
        const double p = spec.policy->prob(st.state, st.action);
        if (!std::isfinite(p)) add(static_cast<int>(t), "policy value not finite");
      } catch (const std::exception& e) {
        add(static_cast<int>(t), std::string("state/action out of bounds: ") + e.what());
      }
    }
  }
  return rep;
}

}  // namespace optirl
