#ifndef OPTIRL_KNN_REWARD_HPP
#define OPTIRL_KNN_REWARD_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

#include "optirl/mdp.hpp"

namespace optirl {

// Kernel k-nearest-neighbor extension of a reward known on visited
// state-action pairs. Distance and kernel share the weighted metric
//   d((s,a),(s',a')) = |s-s'|^2 / (2 sigma_s^2) + |a-a'|^2 / (2 sigma_a^2),
// the prediction is the kernel-weighted mean over the k nearest support
// points, ties broken by insertion order.
class KnnRewardModel {
 public:
  KnnRewardModel(int k, double sigma_s, double sigma_a);

  void add(const StatePoint& s, const ActionPoint& a, double value);
  int size() const { return static_cast<int>(values_.size()); }
  int k() const { return k_; }
  double sigma_s() const { return sigma_s_; }
  double sigma_a() const { return sigma_a_; }

  double query(const StatePoint& s, const ActionPoint& a) const;

  void save(const std::string& path) const;
  static KnnRewardModel load(const std::string& path);

 private:
  int k_;
  double sigma_s_, sigma_a_;
  std::vector<Eigen::VectorXd> states_;
  std::vector<Eigen::VectorXd> actions_;
  std::vector<double> values_;
};

}  // namespace optirl

#endif  // OPTIRL_KNN_REWARD_HPP
