#ifndef OPTIRL_VISIT_INDEX_HPP
#define OPTIRL_VISIT_INDEX_HPP

#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "optirl/mdp.hpp"
#include "optirl/option_set.hpp"

namespace optirl {

// Canonical ordering of the visited (state, option, action) triples and
// (state, option) pairs, in first-visit order, with discounted occupancy
// weights. Continuous states/actions are identified by their exact stored
// values; hashing quantizes only to locate buckets.
class VisitIndex {
 public:
  struct Triple {
    StatePoint s;
    int option;
    ActionPoint a;
  };
  struct Pair {
    StatePoint s;
    int option;
  };

  int n_triples() const { return static_cast<int>(triples_.size()); }
  int n_pairs() const { return static_cast<int>(pairs_.size()); }
  int n_states() const { return static_cast<int>(states_.size()); }

  const Triple& triple(int m) const { return triples_[m]; }
  const Pair& pair(int l) const { return pairs_[l]; }
  const StatePoint& state(int k) const { return states_[k]; }

  int pair_of_triple(int m) const { return pair_of_triple_[m]; }
  int state_of_pair(int l) const { return state_of_pair_[l]; }
  const std::vector<int>& triples_of_pair(int l) const { return triples_of_pair_[l]; }
  const std::vector<int>& pairs_of_state(int k) const { return pairs_of_state_[k]; }

  const Eigen::VectorXd& mu() const { return mu_; }
  const Eigen::VectorXd& mu1() const { return mu1_; }
  Eigen::VectorXd& mutable_mu() { return mu_; }
  Eigen::VectorXd& mutable_mu1() { return mu1_; }

  int find_triple(const StatePoint& s, int option, const ActionPoint& a) const;
  int find_pair(const StatePoint& s, int option) const;

  // Registration keeps first-visit order and returns the index.
  int add_triple(const StatePoint& s, int option, const ActionPoint& a);
  void resize_weights();

 private:
  int add_pair(const StatePoint& s, int option);
  int add_state(const StatePoint& s);

  std::vector<Triple> triples_;
  std::vector<Pair> pairs_;
  std::vector<StatePoint> states_;
  std::vector<int> pair_of_triple_;
  std::vector<int> state_of_pair_;
  std::vector<std::vector<int>> triples_of_pair_;
  std::vector<std::vector<int>> pairs_of_state_;
  std::unordered_map<std::uint64_t, std::vector<int>> triple_buckets_;
  std::unordered_map<std::uint64_t, std::vector<int>> pair_buckets_;
  std::unordered_map<std::uint64_t, std::vector<int>> state_buckets_;
  Eigen::VectorXd mu_;
  Eigen::VectorXd mu1_;

  friend VisitIndex build_visit_index(const std::vector<Trajectory>&, double);
};

// mu[m]  = (1/N) sum_i sum_{t>=0} gamma^t     [triple visited at t]
// mu1[l] = (1/N) sum_i sum_{t>=1} gamma^(t-1) [pair visited at t]
VisitIndex build_visit_index(const std::vector<Trajectory>& demos, double gamma);

// Continuous-domain mode: multiply mu by the fitted intra-option density,
// making the pi factor explicit where each triple is visited once.
void scale_mu_by_policy(VisitIndex& vi, const OptionSet& opts);

}  // namespace optirl

#endif  // OPTIRL_VISIT_INDEX_HPP
