#ifndef OPTIRL_REGRESSORS_HPP
#define OPTIRL_REGRESSORS_HPP

#include <memory>
#include <vector>

#include <Eigen/Core>

#include "optirl/common.hpp"

namespace optirl {

// fit(inputs, targets) -> predictor; implementations must be
// seed-deterministic.
class Regressor {
 public:
  virtual ~Regressor() = default;
  virtual void fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) = 0;
  virtual double predict(const Eigen::RowVectorXd& x) const = 0;
};

// Ensemble of extremely randomized regression trees: at every node a few
// random (feature, threshold) candidates compete on variance reduction.
class ExtraTreesRegressor final : public Regressor {
 public:
  ExtraTreesRegressor(int n_trees = 50, int min_leaf = 2, int k_candidates = 0,
                      std::uint64_t seed = 1);

  void fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) override;
  double predict(const Eigen::RowVectorXd& x) const override;

 private:
  struct Node {
    int feature = -1;  // -1 for leaves
    double threshold = 0.0;
    int left = -1, right = -1;
    double value = 0.0;
  };
  struct Tree {
    std::vector<Node> nodes;
  };
  void build(Tree& tree, const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
             std::vector<int>& idx, int begin, int end, Rng& rng);

  int n_trees_, min_leaf_, k_candidates_;
  std::uint64_t seed_;
  std::vector<Tree> trees_;
};

// Inverse-distance-weighted k-nearest-neighbor regressor; the
// dependency-free fallback.
class KnnRegressor final : public Regressor {
 public:
  explicit KnnRegressor(int k = 5) : k_(k) {
    if (k < 1) throw ConfigError("KnnRegressor: k >= 1");
  }
  void fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) override;
  double predict(const Eigen::RowVectorXd& x) const override;

 private:
  int k_;
  Eigen::MatrixXd x_;
  Eigen::VectorXd y_;
};

std::unique_ptr<Regressor> make_regressor(const std::string& kind, std::uint64_t seed);

}  // namespace optirl

#endif  // OPTIRL_REGRESSORS_HPP
