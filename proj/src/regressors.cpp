#include "optirl/regressors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace optirl {

ExtraTreesRegressor::ExtraTreesRegressor(int n_trees, int min_leaf, int k_candidates,
                                         std::uint64_t seed)
    : n_trees_(n_trees), min_leaf_(min_leaf), k_candidates_(k_candidates), seed_(seed) {
  if (n_trees < 1 || min_leaf < 1) throw ConfigError("ExtraTreesRegressor: bad sizes");
}

void ExtraTreesRegressor::build(Tree& tree, const Eigen::MatrixXd& x,
                                const Eigen::VectorXd& y, std::vector<int>& idx, int begin,
                                int end, Rng& rng) {
  const int node_id = static_cast<int>(tree.nodes.size());
  tree.nodes.emplace_back();
  const int n = end - begin;
  double mean = 0.0;
  for (int i = begin; i < end; ++i) mean += y[idx[i]];
  mean /= n;
  double var = 0.0;
  for (int i = begin; i < end; ++i) var += (y[idx[i]] - mean) * (y[idx[i]] - mean);

  auto make_leaf = [&] { tree.nodes[node_id].value = mean; };
  if (n < 2 * min_leaf_ || var <= 1e-14) {
    make_leaf();
    return;
  }

  const int dim = static_cast<int>(x.cols());
  const int k = k_candidates_ > 0 ? k_candidates_ : dim;
  int best_feat = -1;
  double best_thresh = 0.0, best_score = -1.0;
  for (int c = 0; c < k; ++c) {
    const int f = static_cast<int>(rng.uniform_int(dim));
    double lo = x(idx[begin], f), hi = lo;
    for (int i = begin; i < end; ++i) {
      lo = std::min(lo, x(idx[i], f));
      hi = std::max(hi, x(idx[i], f));
    }
    if (hi <= lo) continue;
    const double thresh = rng.uniform(lo, hi);
    double sl = 0, nl = 0, sr = 0, nr = 0;
    for (int i = begin; i < end; ++i) {
      if (x(idx[i], f) < thresh) {
        sl += y[idx[i]];
        ++nl;
      } else {
        sr += y[idx[i]];
        ++nr;
      }
    }
    if (nl < min_leaf_ || nr < min_leaf_) continue;
    // variance reduction up to constants: sum_left^2/n_left + sum_right^2/n_right
    const double score = sl * sl / nl + sr * sr / nr;
    if (score > best_score) {
      best_score = score;
      best_feat = f;
      best_thresh = thresh;
    }
  }
  if (best_feat < 0) {
    make_leaf();
    return;
  }
  const auto mid_it = std::partition(idx.begin() + begin, idx.begin() + end,
                                     [&](int i) { return x(i, best_feat) < best_thresh; });
  const int mid = static_cast<int>(mid_it - idx.begin());
  if (mid == begin || mid == end) {
    make_leaf();
    return;
  }
  tree.nodes[node_id].feature = best_feat;
  tree.nodes[node_id].threshold = best_thresh;
  tree.nodes[node_id].left = static_cast<int>(tree.nodes.size());
  build(tree, x, y, idx, begin, mid, rng);
  tree.nodes[node_id].right = static_cast<int>(tree.nodes.size());
  build(tree, x, y, idx, mid, end, rng);
}

void ExtraTreesRegressor::fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  if (x.rows() != y.size() || x.rows() == 0)
    throw DataError("ExtraTreesRegressor::fit: empty or mismatched data");
  trees_.assign(n_trees_, Tree{});
  Rng base(seed_);
  for (int t = 0; t < n_trees_; ++t) {
    Rng rng = base.derive(static_cast<std::uint64_t>(t));
    std::vector<int> idx(x.rows());
    std::iota(idx.begin(), idx.end(), 0);
    trees_[t].nodes.reserve(2 * x.rows() / min_leaf_ + 1);
    build(trees_[t], x, y, idx, 0, static_cast<int>(x.rows()), rng);
  }
}

double ExtraTreesRegressor::predict(const Eigen::RowVectorXd& x) const {
  if (trees_.empty()) throw DataError("ExtraTreesRegressor::predict before fit");
  double sum = 0.0;
  for (const auto& tree : trees_) {
    int node = 0;
    while (tree.nodes[node].feature >= 0)
      node = x[tree.nodes[node].feature] < tree.nodes[node].threshold
                 ? tree.nodes[node].left
                 : tree.nodes[node].right;
    sum += tree.nodes[node].value;
  }
  return sum / trees_.size();
}

void KnnRegressor::fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  if (x.rows() != y.size() || x.rows() == 0)
    throw DataError("KnnRegressor::fit: empty or mismatched data");
  x_ = x;
  y_ = y;
}

double KnnRegressor::predict(const Eigen::RowVectorXd& x) const {
  if (x_.rows() == 0) throw DataError("KnnRegressor::predict before fit");
  const int n = static_cast<int>(x_.rows());
  const int k = std::min(k_, n);
  std::vector<std::pair<double, int>> dist(n);
  for (int i = 0; i < n; ++i) dist[i] = {(x_.row(i) - x).squaredNorm(), i};
  std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
  double wsum = 0.0, vsum = 0.0;
  for (int i = 0; i < k; ++i) {
    const double w = 1.0 / (std::sqrt(dist[i].first) + 1e-12);
    wsum += w;
    vsum += w * y_[dist[i].second];
  }
  return vsum / wsum;
}

std::unique_ptr<Regressor> make_regressor(const std::string& kind, std::uint64_t seed) {
  if (kind == "extra_trees") return std::make_unique<ExtraTreesRegressor>(50, 2, 0, seed);
  if (kind == "knn") return std::make_unique<KnnRegressor>(5);
  throw ConfigError("unknown regressor '" + kind + "' (extra_trees|knn)");
}

}  // namespace optirl
