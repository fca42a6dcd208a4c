#include "optirl/option_set.hpp"

#include <cmath>

namespace optirl {

int PolicyOverOptions::sample(const StatePoint& s, Rng& rng) const {
  Eigen::VectorXd p = probs(s);
  double u = rng.uniform();
  for (Eigen::Index w = 0; w < p.size(); ++w) {
    u -= p[w];
    if (u <= 0) return static_cast<int>(w);
  }
  return static_cast<int>(p.size()) - 1;
}

TabularPolicyOverOptions::TabularPolicyOverOptions(Eigen::MatrixXd probs)
    : probs_(std::move(probs)) {
  for (Eigen::Index s = 0; s < probs_.rows(); ++s) {
    const double sum = probs_.row(s).sum();
    if (std::abs(sum - 1.0) > 1e-12 || probs_.row(s).minCoeff() < 0.0 ||
        probs_.row(s).maxCoeff() > 1.0)
      throw DataError("TabularPolicyOverOptions: row " + std::to_string(s) +
                      " is not a probability distribution");
  }
}

Eigen::VectorXd TabularPolicyOverOptions::probs(const StatePoint& s) const {
  if (!s.is_tabular() || s.id() >= probs_.rows())
    throw DataError("TabularPolicyOverOptions: state out of domain: " + s.to_string());
  return probs_.row(s.id());
}

void OptionSet::check_distribution(const StatePoint& s) const {
  Eigen::VectorXd p = policy_over_options->probs(s);
  if (p.size() != n_options())
    throw DataError("OptionSet: policy-over-options width mismatch");
  if (std::abs(p.sum() - 1.0) > 1e-12 || p.minCoeff() < 0.0 || p.maxCoeff() > 1.0)
    throw DataError("OptionSet: pi_Omega not a distribution at " + s.to_string());
}

}  // namespace optirl
