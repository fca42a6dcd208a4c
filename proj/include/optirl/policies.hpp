#ifndef OPTIRL_POLICIES_HPP
#define OPTIRL_POLICIES_HPP

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "optirl/common.hpp"
#include "optirl/mdp.hpp"

namespace optirl {

// Dense segment of an otherwise-zero parameter-length vector.
struct SegVec {
  int offset = 0;
  Eigen::VectorXd v;
};

// Dense block of an otherwise-zero symmetric parameter-length matrix,
// anchored at (offset, offset).
struct SegMat {
  int offset = 0;
  Eigen::MatrixXd m;
};

Eigen::VectorXd scatter(const SegVec& g, int dim);
Eigen::MatrixXd scatter(const SegMat& h, int dim);

// Uniform RBF lattice over a box; phi_k(s) = exp(-delta * |s - s_k|^2).
struct RbfGrid {
  Eigen::MatrixXd centers;  // N x dim
  double delta = 1.0;

  // counts per dimension, centers at the box's uniform lattice (endpoints
  // included). delta <= 0 picks 1/mean(h_i^2) so adjacent centers overlap
  // near exp(-1).
  static RbfGrid uniform(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                         const std::vector<int>& counts, double delta = -1.0);

  int size() const { return static_cast<int>(centers.rows()); }
  Eigen::VectorXd features(const StatePoint& s) const;
};

class IntraOptionPolicy {
 public:
  virtual ~IntraOptionPolicy() = default;

  virtual std::string family() const = 0;
  virtual int param_dim() const = 0;
  virtual const Eigen::VectorXd& params() const = 0;
  virtual void set_params(const Eigen::VectorXd& theta) = 0;

  // probability for tabular actions, density for continuous ones
  virtual double prob(const StatePoint& s, const ActionPoint& a) const = 0;
  // overflow-safe log of prob()
  virtual double log_prob(const StatePoint& s, const ActionPoint& a) const = 0;
  virtual SegVec log_grad(const StatePoint& s, const ActionPoint& a) const = 0;
  virtual SegMat log_hessian(const StatePoint& s, const ActionPoint& a) const = 0;
  virtual ActionPoint sample(const StatePoint& s, Rng& rng) const = 0;

  virtual std::unique_ptr<IntraOptionPolicy> clone() const = 0;
};

// pi(a|s) = softmax(theta[s,:] / temperature); parameters flattened row-major.
class BoltzmannTabularPolicy final : public IntraOptionPolicy {
 public:
  BoltzmannTabularPolicy(int n_states, int n_actions, double temperature = 1.0);

  std::string family() const override { return "boltzmann_tabular"; }
  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }
  double temperature() const { return temperature_; }

  int param_dim() const override { return n_states_ * n_actions_; }
  const Eigen::VectorXd& params() const override { return theta_; }
  void set_params(const Eigen::VectorXd& theta) override;
  double theta_at(int s, int a) const { return theta_[s * n_actions_ + a]; }
  void add_theta(int s, int a, double delta) { theta_[s * n_actions_ + a] += delta; }

  Eigen::VectorXd action_probs(int s) const;
  double prob(const StatePoint& s, const ActionPoint& a) const override;
  double log_prob(const StatePoint& s, const ActionPoint& a) const override;
  SegVec log_grad(const StatePoint& s, const ActionPoint& a) const override;
  SegMat log_hessian(const StatePoint& s, const ActionPoint& a) const override;
  ActionPoint sample(const StatePoint& s, Rng& rng) const override;

  std::unique_ptr<IntraOptionPolicy> clone() const override {
    return std::make_unique<BoltzmannTabularPolicy>(*this);
  }

 private:
  void check_state(const StatePoint& s) const;
  int n_states_;
  int n_actions_;
  double temperature_;
  Eigen::VectorXd theta_;
};

// a | s ~ N(y(s), sigma2) with y(s) = theta . phi(s) over an RBF grid.
class GaussianRbfPolicy final : public IntraOptionPolicy {
 public:
  GaussianRbfPolicy(RbfGrid grid, double sigma2 = 0.01);

  std::string family() const override { return "gaussian_rbf"; }
  const RbfGrid& grid() const { return grid_; }
  double sigma2() const { return sigma2_; }

  int param_dim() const override { return grid_.size(); }
  const Eigen::VectorXd& params() const override { return theta_; }
  void set_params(const Eigen::VectorXd& theta) override;

  double mean(const StatePoint& s) const;
  double prob(const StatePoint& s, const ActionPoint& a) const override;
  double log_prob(const StatePoint& s, const ActionPoint& a) const override;
  SegVec log_grad(const StatePoint& s, const ActionPoint& a) const override;
  SegMat log_hessian(const StatePoint& s, const ActionPoint& a) const override;
  ActionPoint sample(const StatePoint& s, Rng& rng) const override;

  std::unique_ptr<IntraOptionPolicy> clone() const override {
    return std::make_unique<GaussianRbfPolicy>(*this);
  }

 private:
  RbfGrid grid_;
  double sigma2_;
  Eigen::VectorXd theta_;
};

// beta(s) = sigmoid(vartheta . feat(s)); feat is a tabular indicator or the
// policy's RBF vector.
class SigmoidTermination {
 public:
  static SigmoidTermination tabular(int n_states);
  static SigmoidTermination rbf(RbfGrid grid);

  std::string family() const { return tabular_states_ > 0 ? "sigmoid_tabular" : "sigmoid_rbf"; }
  int param_dim() const { return static_cast<int>(vartheta_.size()); }
  const Eigen::VectorXd& params() const { return vartheta_; }
  void set_params(const Eigen::VectorXd& vartheta);
  const RbfGrid& grid() const { return grid_; }
  int tabular_states() const { return tabular_states_; }

  SegVec features(const StatePoint& s) const;
  double beta(const StatePoint& s) const;
  // d beta / d vartheta = beta (1 - beta) feat(s)
  SegVec grad(const StatePoint& s) const;
  // derivatives of log P(b|s); throws NumericalError when beta saturates
  std::pair<SegVec, SegMat> log_grad_hessian(const StatePoint& s, bool b) const;

 private:
  SigmoidTermination() = default;
  int tabular_states_ = 0;  // 0 means RBF features
  RbfGrid grid_;
  Eigen::VectorXd vartheta_;
};

}  // namespace optirl

#endif  // OPTIRL_POLICIES_HPP
