#include "optirl/policies.hpp"

#include <cmath>

namespace optirl {

Eigen::VectorXd scatter(const SegVec& g, int dim) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
  out.segment(g.offset, g.v.size()) = g.v;
  return out;
}

Eigen::MatrixXd scatter(const SegMat& h, int dim) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  out.block(h.offset, h.offset, h.m.rows(), h.m.cols()) = h.m;
  return out;
}

RbfGrid RbfGrid::uniform(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                         const std::vector<int>& counts, double delta) {
  const int dim = static_cast<int>(lo.size());
  if (hi.size() != dim || static_cast<int>(counts.size()) != dim)
    throw ConfigError("RbfGrid::uniform: dimension mismatch");
  int n = 1;
  for (int c : counts) {
    if (c < 1) throw ConfigError("RbfGrid::uniform: counts must be >= 1");
    n *= c;
  }
  RbfGrid g;
  g.centers.resize(n, dim);
  std::vector<int> idx(dim, 0);
  for (int k = 0; k < n; ++k) {
    for (int d = 0; d < dim; ++d) {
      g.centers(k, d) =
          counts[d] == 1 ? 0.5 * (lo[d] + hi[d])
                         : lo[d] + (hi[d] - lo[d]) * idx[d] / double(counts[d] - 1);
    }
    for (int d = dim - 1; d >= 0; --d) {
      if (++idx[d] < counts[d]) break;
      idx[d] = 0;
    }
  }
  if (delta > 0) {
    g.delta = delta;
  } else {
    double mean_h2 = 0.0;
    int terms = 0;
    for (int d = 0; d < dim; ++d) {
      if (counts[d] > 1) {
        const double h = (hi[d] - lo[d]) / double(counts[d] - 1);
        mean_h2 += h * h;
        ++terms;
      }
    }
    g.delta = terms > 0 && mean_h2 > 0 ? terms / mean_h2 : 1.0;
  }
  return g;
}

Eigen::VectorXd RbfGrid::features(const StatePoint& s) const {
  const Eigen::VectorXd& x = s.values();
  if (x.size() != centers.cols())
    throw DataError("RbfGrid::features: state dimension mismatch");
  Eigen::VectorXd phi(centers.rows());
  for (Eigen::Index k = 0; k < centers.rows(); ++k)
    phi[k] = std::exp(-delta * (x.transpose() - centers.row(k)).squaredNorm());
  return phi;
}

BoltzmannTabularPolicy::BoltzmannTabularPolicy(int n_states, int n_actions,
                                               double temperature)
    : n_states_(n_states), n_actions_(n_actions), temperature_(temperature) {
  if (n_states < 1 || n_actions < 1) throw ConfigError("BoltzmannTabularPolicy: sizes");
  if (temperature <= 0) throw ConfigError("BoltzmannTabularPolicy: temperature > 0 required");
  theta_ = Eigen::VectorXd::Zero(n_states * n_actions);
}

void BoltzmannTabularPolicy::set_params(const Eigen::VectorXd& theta) {
  if (theta.size() != theta_.size())
    throw DataError("BoltzmannTabularPolicy::set_params: wrong length");
  theta_ = theta;
}

void BoltzmannTabularPolicy::check_state(const StatePoint& s) const {
  if (!s.is_tabular() || s.id() >= n_states_)
    throw DataError("BoltzmannTabularPolicy: state out of domain: " + s.to_string());
}

Eigen::VectorXd BoltzmannTabularPolicy::action_probs(int s) const {
  Eigen::VectorXd logits =
      theta_.segment(s * n_actions_, n_actions_) / temperature_;
  const double m = logits.maxCoeff();
  Eigen::VectorXd p = (logits.array() - m).exp();
  return p / p.sum();
}

double BoltzmannTabularPolicy::prob(const StatePoint& s, const ActionPoint& a) const {
  check_state(s);
  if (!a.is_tabular() || a.id() >= n_actions_)
    throw DataError("BoltzmannTabularPolicy: action out of domain: " + a.to_string());
  return action_probs(s.id())[a.id()];
}

SegVec BoltzmannTabularPolicy::log_grad(const StatePoint& s, const ActionPoint& a) const {
  check_state(s);
  Eigen::VectorXd p = action_probs(s.id());
  Eigen::VectorXd g = -p / temperature_;
  g[a.id()] += 1.0 / temperature_;
  return {s.id() * n_actions_, std::move(g)};
}

SegMat BoltzmannTabularPolicy::log_hessian(const StatePoint& s, const ActionPoint&) const {
  check_state(s);
  Eigen::VectorXd p = action_probs(s.id());
  Eigen::MatrixXd h =
      (p * p.transpose() - Eigen::MatrixXd(p.asDiagonal())) / (temperature_ * temperature_);
  return {s.id() * n_actions_, std::move(h)};
}

ActionPoint BoltzmannTabularPolicy::sample(const StatePoint& s, Rng& rng) const {
  check_state(s);
  Eigen::VectorXd p = action_probs(s.id());
  double u = rng.uniform();
  for (int a = 0; a < n_actions_; ++a) {
    u -= p[a];
    if (u <= 0) return ActionPoint::tabular(a);
  }
  return ActionPoint::tabular(n_actions_ - 1);
}

GaussianRbfPolicy::GaussianRbfPolicy(RbfGrid grid, double sigma2)
    : grid_(std::move(grid)), sigma2_(sigma2) {
  if (sigma2 <= 0) throw ConfigError("GaussianRbfPolicy: sigma2 > 0 required");
  theta_ = Eigen::VectorXd::Zero(grid_.size());
}

void GaussianRbfPolicy::set_params(const Eigen::VectorXd& theta) {
  if (theta.size() != theta_.size())
    throw DataError("GaussianRbfPolicy::set_params: wrong length");
  theta_ = theta;
}

double GaussianRbfPolicy::mean(const StatePoint& s) const {
  return theta_.dot(grid_.features(s));
}

double GaussianRbfPolicy::prob(const StatePoint& s, const ActionPoint& a) const {
  const double r = a.scalar_value() - mean(s);
  return std::exp(-0.5 * r * r / sigma2_) / std::sqrt(2.0 * M_PI * sigma2_);
}

SegVec GaussianRbfPolicy::log_grad(const StatePoint& s, const ActionPoint& a) const {
  Eigen::VectorXd phi = grid_.features(s);
  const double r = a.scalar_value() - theta_.dot(phi);
  return {0, (r / sigma2_) * phi};
}

SegMat GaussianRbfPolicy::log_hessian(const StatePoint& s, const ActionPoint&) const {
  Eigen::VectorXd phi = grid_.features(s);
  return {0, (-1.0 / sigma2_) * (phi * phi.transpose())};
}

ActionPoint GaussianRbfPolicy::sample(const StatePoint& s, Rng& rng) const {
  return ActionPoint::scalar(rng.normal(mean(s), std::sqrt(sigma2_)));
}

SigmoidTermination SigmoidTermination::tabular(int n_states) {
  if (n_states < 1) throw ConfigError("SigmoidTermination::tabular: n_states");
  SigmoidTermination t;
  t.tabular_states_ = n_states;
  t.vartheta_ = Eigen::VectorXd::Zero(n_states);
  return t;
}

SigmoidTermination SigmoidTermination::rbf(RbfGrid grid) {
  SigmoidTermination t;
  t.grid_ = std::move(grid);
  t.vartheta_ = Eigen::VectorXd::Zero(t.grid_.size());
  return t;
}

void SigmoidTermination::set_params(const Eigen::VectorXd& vartheta) {
  if (vartheta.size() != vartheta_.size())
    throw DataError("SigmoidTermination::set_params: wrong length");
  vartheta_ = vartheta;
}

SegVec SigmoidTermination::features(const StatePoint& s) const {
  if (tabular_states_ > 0) {
    if (!s.is_tabular() || s.id() >= tabular_states_)
      throw DataError("SigmoidTermination: state out of domain: " + s.to_string());
    return {s.id(), Eigen::VectorXd::Ones(1)};
  }
  return {0, grid_.features(s)};
}

double SigmoidTermination::beta(const StatePoint& s) const {
  const SegVec f = features(s);
  const double z = vartheta_.segment(f.offset, f.v.size()).dot(f.v);
  return 1.0 / (1.0 + std::exp(-z));
}

SegVec SigmoidTermination::grad(const StatePoint& s) const {
  SegVec f = features(s);
  const double b = beta(s);
  f.v *= b * (1.0 - b);
  return f;
}

std::pair<SegVec, SegMat> SigmoidTermination::log_grad_hessian(const StatePoint& s,
                                                               bool b) const {
  const SegVec f = features(s);
  const double bt = beta(s);
  if (bt <= 0.0 || bt >= 1.0 || !(bt == bt))
    throw NumericalError("termination saturated (beta in {0,1}) at state " + s.to_string());
  SegVec g{f.offset, (b ? (1.0 - bt) : -bt) * f.v};
  SegMat h{f.offset, -bt * (1.0 - bt) * (f.v * f.v.transpose())};
  return {std::move(g), std::move(h)};
}

}  // namespace optirl
