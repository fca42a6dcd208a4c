#include "optirl/reward_combine.hpp"

#include <memory>

#include "optirl/common.hpp"
#include "optirl/csv.hpp"

namespace optirl {

FlatReward merge_option_rewards(std::vector<FlatReward> per_option, const OptionSet& opts) {
  if (static_cast<int>(per_option.size()) != opts.n_options())
    throw DataError("merge_option_rewards: one reward per option required");
  auto rewards = std::make_shared<std::vector<FlatReward>>(std::move(per_option));
  auto pi_omega = std::shared_ptr<PolicyOverOptions>(opts.policy_over_options->clone());
  return [rewards, pi_omega](const StatePoint& s, const ActionPoint& a) {
    const Eigen::VectorXd p = pi_omega->probs(s);
    double r = 0.0;
    for (Eigen::Index w = 0; w < p.size(); ++w) {
      if (p[w] <= 0.0) continue;
      if (!(*rewards)[w])
        throw DataError("merge_option_rewards: reward undefined for option " +
                        std::to_string(w) + " with positive pi_Omega");
      r += p[w] * (*rewards)[w](s, a);
    }
    return r;
  };
}

FlatReward blend_transfer_reward(FlatReward r_default, FlatReward r_recovered,
                                 double alpha) {
  if (alpha < 0.0 || alpha > 1.0)
    throw ConfigError("blend_transfer_reward: alpha must be in [0,1]");
  return [r_default = std::move(r_default), r_recovered = std::move(r_recovered),
          alpha](const StatePoint& s, const ActionPoint& a) {
    return (1.0 - alpha) * r_default(s, a) + alpha * r_recovered(s, a);
  };
}

std::vector<Eigen::MatrixXd> tabular_option_rewards(const Eigen::VectorXd& values,
                                                    const VisitIndex& vi, int n_states,
                                                    int n_actions, int n_options,
                                                    TabularFill fill) {
  if (values.size() != vi.n_triples())
    throw DataError("tabular_option_rewards: one value per visited triple required");
  std::vector<double> sum(n_options, 0.0);
  std::vector<int> count(n_options, 0);
  for (int m = 0; m < vi.n_triples(); ++m) {
    sum[vi.triple(m).option] += values[m];
    ++count[vi.triple(m).option];
  }
  double global = 0.0;
  if (vi.n_triples() > 0) global = values.sum() / vi.n_triples();
  std::vector<Eigen::MatrixXd> tables;
  for (int w = 0; w < n_options; ++w) {
    double fill_value = 0.0;
    if (fill == TabularFill::kMean)
      fill_value = count[w] > 0 ? sum[w] / count[w] : global;
    tables.push_back(Eigen::MatrixXd::Constant(n_states, n_actions, fill_value));
  }
  for (int m = 0; m < vi.n_triples(); ++m) {
    const auto& tr = vi.triple(m);
    if (!tr.s.is_tabular() || !tr.a.is_tabular())
      throw DataError("tabular_option_rewards: domain is not tabular");
    tables[tr.option](tr.s.id(), tr.a.id()) = values[m];
  }
  return tables;
}

Eigen::MatrixXd merge_tabular_rewards(const std::vector<Eigen::MatrixXd>& per_option,
                                      const OptionSet& opts) {
  if (per_option.empty()) throw DataError("merge_tabular_rewards: no option tables");
  const int n_states = static_cast<int>(per_option[0].rows());
  Eigen::MatrixXd merged = Eigen::MatrixXd::Zero(n_states, per_option[0].cols());
  for (int s = 0; s < n_states; ++s) {
    const Eigen::VectorXd p = opts.policy_over_options->probs(StatePoint::tabular(s));
    for (int w = 0; w < static_cast<int>(per_option.size()); ++w)
      if (p[w] > 0.0) merged.row(s) += p[w] * per_option[w].row(s);
  }
  return merged;
}

Eigen::MatrixXd normalize_to_range(const Eigen::MatrixXd& table, double lo, double hi) {
  const double tmin = table.minCoeff();
  const double tmax = table.maxCoeff();
  if (tmax - tmin <= 0.0) return Eigen::MatrixXd::Constant(table.rows(), table.cols(), lo);
  return ((table.array() - tmin) / (tmax - tmin) * (hi - lo) + lo).matrix();
}

FlatReward table_reward(Eigen::MatrixXd table) {
  auto t = std::make_shared<Eigen::MatrixXd>(std::move(table));
  return [t](const StatePoint& s, const ActionPoint& a) {
    if (!s.is_tabular() || !a.is_tabular())
      throw DataError("table_reward: tabular state/action required");
    return (*t)(s.id(), a.id());
  };
}

void write_table_csv(const std::string& path, const Eigen::MatrixXd& table) {
  csv::Table t;
  t.header = {"state"};
  for (Eigen::Index a = 0; a < table.cols(); ++a)
    t.header.push_back("a" + std::to_string(a));
  for (Eigen::Index s = 0; s < table.rows(); ++s) {
    std::vector<std::string> row = {std::to_string(s)};
    for (Eigen::Index a = 0; a < table.cols(); ++a)
      row.push_back(csv::format_double(table(s, a)));
    t.rows.push_back(std::move(row));
  }
  csv::write_file(path, t);
}

Eigen::MatrixXd read_table_csv(const std::string& path) {
  const csv::Table t = csv::read_file(path);
  if (t.header.empty() || t.header[0] != "state")
    throw DataError(path + ": not a reward table file");
  const int n_a = static_cast<int>(t.header.size()) - 1;
  Eigen::MatrixXd table(t.rows.size(), n_a);
  for (size_t r = 0; r < t.rows.size(); ++r) {
    const std::string ctx = path + " row " + std::to_string(r + 2);
    const long s = csv::parse_long(t.rows[r][0], ctx);
    if (s != static_cast<long>(r)) throw DataError(ctx + ": non-contiguous state ids");
    for (int a = 0; a < n_a; ++a)
      table(r, a) = csv::parse_double(t.rows[r][a + 1], ctx);
  }
  return table;
}

}  // namespace optirl
