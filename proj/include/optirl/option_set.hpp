#ifndef OPTIRL_OPTION_SET_HPP
#define OPTIRL_OPTION_SET_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "optirl/policies.hpp"

namespace optirl {

class PolicyOverOptions {
 public:
  virtual ~PolicyOverOptions() = default;
  virtual std::string family() const = 0;
  virtual int n_options() const = 0;
  virtual Eigen::VectorXd probs(const StatePoint& s) const = 0;
  virtual std::unique_ptr<PolicyOverOptions> clone() const = 0;

  int sample(const StatePoint& s, Rng& rng) const;
};

class TabularPolicyOverOptions final : public PolicyOverOptions {
 public:
  // probs: n_states x n_options row-stochastic matrix
  explicit TabularPolicyOverOptions(Eigen::MatrixXd probs);

  std::string family() const override { return "tabular"; }
  int n_options() const override { return static_cast<int>(probs_.cols()); }
  Eigen::VectorXd probs(const StatePoint& s) const override;
  const Eigen::MatrixXd& table() const { return probs_; }
  std::unique_ptr<PolicyOverOptions> clone() const override {
    return std::make_unique<TabularPolicyOverOptions>(*this);
  }

 private:
  Eigen::MatrixXd probs_;
};

// Deterministic map state -> option, expressed as a rule index function.
// `meta` carries the rule's parameters for serialization.
class RulePolicyOverOptions final : public PolicyOverOptions {
 public:
  using Rule = std::function<int(const StatePoint&)>;
  RulePolicyOverOptions(int n_options, Rule rule, std::string family_tag,
                        std::map<std::string, std::string> meta = {})
      : n_(n_options), rule_(std::move(rule)), family_(std::move(family_tag)),
        meta_(std::move(meta)) {}

  std::string family() const override { return family_; }
  int n_options() const override { return n_; }
  Eigen::VectorXd probs(const StatePoint& s) const override {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(n_);
    const int w = rule_(s);
    if (w < 0 || w >= n_) throw DataError("RulePolicyOverOptions: rule out of range");
    p[w] = 1.0;
    return p;
  }
  std::unique_ptr<PolicyOverOptions> clone() const override {
    return std::make_unique<RulePolicyOverOptions>(*this);
  }
  const std::map<std::string, std::string>& meta() const { return meta_; }

 private:
  int n_;
  Rule rule_;
  std::string family_;
  std::map<std::string, std::string> meta_;
};

struct OptionSpec {
  std::unique_ptr<IntraOptionPolicy> policy;
  SigmoidTermination termination = SigmoidTermination::tabular(1);
  // empty = initiation set is the whole state space
  std::function<bool(const StatePoint&)> initiation;

  OptionSpec() = default;
  OptionSpec(const OptionSpec& o)
      : policy(o.policy ? o.policy->clone() : nullptr),
        termination(o.termination),
        initiation(o.initiation) {}
  OptionSpec& operator=(const OptionSpec& o) {
    policy = o.policy ? o.policy->clone() : nullptr;
    termination = o.termination;
    initiation = o.initiation;
    return *this;
  }
  OptionSpec(OptionSpec&&) = default;
  OptionSpec& operator=(OptionSpec&&) = default;
};

struct OptionSet {
  std::vector<OptionSpec> options;
  std::unique_ptr<PolicyOverOptions> policy_over_options;

  OptionSet() = default;
  OptionSet(const OptionSet& o)
      : options(o.options),
        policy_over_options(o.policy_over_options ? o.policy_over_options->clone()
                                                  : nullptr) {}
  OptionSet& operator=(const OptionSet& o) {
    options = o.options;
    policy_over_options = o.policy_over_options ? o.policy_over_options->clone() : nullptr;
    return *this;
  }
  OptionSet(OptionSet&&) = default;
  OptionSet& operator=(OptionSet&&) = default;

  int n_options() const { return static_cast<int>(options.size()); }

  // sum of probabilities must be 1 within 1e-12 and each in [0,1]
  void check_distribution(const StatePoint& s) const;
};

}  // namespace optirl

#endif  // OPTIRL_OPTION_SET_HPP
