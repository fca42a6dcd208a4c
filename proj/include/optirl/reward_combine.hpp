#ifndef OPTIRL_REWARD_COMBINE_HPP
#define OPTIRL_REWARD_COMBINE_HPP

#include <functional>
#include <vector>

#include "optirl/option_set.hpp"
#include "optirl/visit_index.hpp"

namespace optirl {

// Option-free reward over (state, action).
using FlatReward = std::function<double(const StatePoint&, const ActionPoint&)>;

enum class TabularFill { kMean, kZero };

// pi_Omega-weighted sum of per-option rewards; a deterministic pi_Omega
// reduces it to the selected option's reward. Options with zero weight are
// never queried.
FlatReward merge_option_rewards(std::vector<FlatReward> per_option, const OptionSet& opts);

// (1 - alpha) * r_default + alpha * r_recovered, pointwise.
FlatReward blend_transfer_reward(FlatReward r_default, FlatReward r_recovered, double alpha);

// Dense per-option reward tables for a tabular domain: visited triples take
// their recovered values, the rest the option's mean recovered value (or 0).
std::vector<Eigen::MatrixXd> tabular_option_rewards(const Eigen::VectorXd& values,
                                                    const VisitIndex& vi, int n_states,
                                                    int n_actions, int n_options,
                                                    TabularFill fill);

// pi_Omega-weighted merge of tabular option rewards into one table.
Eigen::MatrixXd merge_tabular_rewards(const std::vector<Eigen::MatrixXd>& per_option,
                                      const OptionSet& opts);

// Affine map of table values onto [lo, hi]; constant tables map to lo.
Eigen::MatrixXd normalize_to_range(const Eigen::MatrixXd& table, double lo, double hi);

FlatReward table_reward(Eigen::MatrixXd table);

// state-by-action reward table as CSV (header: state,a0,a1,...)
void write_table_csv(const std::string& path, const Eigen::MatrixXd& table);
Eigen::MatrixXd read_table_csv(const std::string& path);

}  // namespace optirl

#endif  // OPTIRL_REWARD_COMBINE_HPP
