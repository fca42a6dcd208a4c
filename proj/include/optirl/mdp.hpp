#ifndef OPTIRL_MDP_HPP
#define OPTIRL_MDP_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace optirl {

// A state is either an index into a finite state set or a real vector.
// Continuous states keep their exact stored values; the quantized key is
// only used for hashing visited sets, never for merging distinct values.
class StatePoint {
 public:
  StatePoint() = default;
  static StatePoint tabular(int id) {
    StatePoint s;
    s.id_ = id;
    return s;
  }
  static StatePoint vec(Eigen::VectorXd v) {
    StatePoint s;
    s.vec_ = std::move(v);
    s.id_ = -1;
    return s;
  }

  bool is_tabular() const { return id_ >= 0; }
  int id() const { return id_; }
  const Eigen::VectorXd& values() const { return vec_; }

  bool operator==(const StatePoint& o) const {
    if (id_ != o.id_) return false;
    if (id_ >= 0) return true;
    if (vec_.size() != o.vec_.size()) return false;
    for (Eigen::Index i = 0; i < vec_.size(); ++i)
      if (vec_[i] != o.vec_[i]) return false;
    return true;
  }

  std::uint64_t hash_key(double quantum = 1e-9) const;
  std::string to_string() const;

 private:
  int id_ = -1;
  Eigen::VectorXd vec_;
};

class ActionPoint {
 public:
  ActionPoint() = default;
  static ActionPoint tabular(int id) {
    ActionPoint a;
    a.id_ = id;
    return a;
  }
  static ActionPoint scalar(double x) {
    ActionPoint a;
    a.id_ = -1;
    a.vec_ = Eigen::VectorXd::Constant(1, x);
    return a;
  }
  static ActionPoint vec(Eigen::VectorXd v) {
    ActionPoint a;
    a.id_ = -1;
    a.vec_ = std::move(v);
    return a;
  }

  bool is_tabular() const { return id_ >= 0; }
  int id() const { return id_; }
  double scalar_value() const { return vec_[0]; }
  const Eigen::VectorXd& values() const { return vec_; }

  bool operator==(const ActionPoint& o) const {
    if (id_ != o.id_) return false;
    if (id_ >= 0) return true;
    if (vec_.size() != o.vec_.size()) return false;
    for (Eigen::Index i = 0; i < vec_.size(); ++i)
      if (vec_[i] != o.vec_[i]) return false;
    return true;
  }

  std::uint64_t hash_key(double quantum = 1e-9) const;
  std::string to_string() const;

 private:
  int id_ = -1;
  Eigen::VectorXd vec_;
};

// One demonstration step. term_flag is 1 iff the option running at the
// previous step terminated on arrival, so the option here was freshly drawn.
struct Step {
  int option = 0;
  StatePoint state;
  ActionPoint action;
  bool term_flag = false;
};

// Immutable after construction; shared freely between workers.
struct Trajectory {
  std::vector<Step> steps;
  StatePoint terminal_state;
  int episode_id = 0;

  int length() const { return static_cast<int>(steps.size()); }
};

using RewardFn =
    std::function<double(const StatePoint&, int, const ActionPoint&)>;

// sum_t gamma^t reward(s_t, w_t, a_t); throws NumericalError naming the step
// if the reward comes back non-finite.
double discounted_return(const Trajectory& traj, const RewardFn& reward, double gamma);

struct Violation {
  int step = -1;
  std::string what;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Structural checks shared by every consumer of demonstrations; never throws.
class OptionSet;
ValidationReport validate_trajectory(const Trajectory& traj, const OptionSet& opts);

}  // namespace optirl

#endif  // OPTIRL_MDP_HPP
