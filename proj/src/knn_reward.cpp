#include "optirl/knn_reward.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "optirl/common.hpp"
#include "optirl/csv.hpp"

namespace optirl {

namespace {

Eigen::VectorXd point_values(const StatePoint& s) {
  if (s.is_tabular()) return Eigen::VectorXd::Constant(1, static_cast<double>(s.id()));
  return s.values();
}

Eigen::VectorXd point_values(const ActionPoint& a) {
  if (a.is_tabular()) return Eigen::VectorXd::Constant(1, static_cast<double>(a.id()));
  return a.values();
}

}  // namespace

KnnRewardModel::KnnRewardModel(int k, double sigma_s, double sigma_a)
    : k_(k), sigma_s_(sigma_s), sigma_a_(sigma_a) {
  if (k < 1) throw ConfigError("KnnRewardModel: k >= 1 required");
  if (sigma_s <= 0 || sigma_a <= 0) throw ConfigError("KnnRewardModel: bandwidths > 0");
}

void KnnRewardModel::add(const StatePoint& s, const ActionPoint& a, double value) {
  states_.push_back(point_values(s));
  actions_.push_back(point_values(a));
  values_.push_back(value);
}

double KnnRewardModel::query(const StatePoint& s, const ActionPoint& a) const {
  if (values_.empty()) throw DataError("KnnRewardModel: empty support");
  const Eigen::VectorXd qs = point_values(s);
  const Eigen::VectorXd qa = point_values(a);
  const int n = size();
  std::vector<std::pair<double, int>> dist(n);
  for (int i = 0; i < n; ++i) {
    const double d = (qs - states_[i]).squaredNorm() / (2.0 * sigma_s_ * sigma_s_) +
                     (qa - actions_[i]).squaredNorm() / (2.0 * sigma_a_ * sigma_a_);
    dist[i] = {d, i};
  }
  const int k = std::min(k_, n);
  // stable sort keeps insertion order at distance ties
  std::stable_sort(dist.begin(), dist.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  const double d0 = dist[0].first;
  double wsum = 0.0, vsum = 0.0;
  for (int i = 0; i < k; ++i) {
    // the common exp(-d0) factor cancels in the ratio; subtracting it keeps
    // far queries from underflowing to 0/0
    const double w = std::exp(-(dist[i].first - d0));
    wsum += w;
    vsum += w * values_[dist[i].second];
  }
  return vsum / wsum;
}

void KnnRewardModel::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write KNN model: " + path);
  const int sd = states_.empty() ? 0 : static_cast<int>(states_[0].size());
  const int ad = actions_.empty() ? 0 : static_cast<int>(actions_[0].size());
  out << "# knn_reward k=" << k_ << " sigma_s=" << csv::format_double(sigma_s_)
      << " sigma_a=" << csv::format_double(sigma_a_) << " state_dim=" << sd
      << " action_dim=" << ad << "\n";
  for (int i = 0; i < size(); ++i) {
    for (int d = 0; d < sd; ++d) out << csv::format_double(states_[i][d]) << ',';
    for (int d = 0; d < ad; ++d) out << csv::format_double(actions_[i][d]) << ',';
    out << csv::format_double(values_[i]) << '\n';
  }
}

KnnRewardModel KnnRewardModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open KNN model: " + path);
  std::string header;
  std::getline(in, header);
  int k = 0, sd = 0, ad = 0;
  double ss = 0, sa = 0;
  {
    std::istringstream hs(header);
    std::string tok;
    while (hs >> tok) {
      if (tok.rfind("k=", 0) == 0) k = std::stoi(tok.substr(2));
      if (tok.rfind("sigma_s=", 0) == 0) ss = std::stod(tok.substr(8));
      if (tok.rfind("sigma_a=", 0) == 0) sa = std::stod(tok.substr(8));
      if (tok.rfind("state_dim=", 0) == 0) sd = std::stoi(tok.substr(10));
      if (tok.rfind("action_dim=", 0) == 0) ad = std::stoi(tok.substr(11));
    }
  }
  if (k < 1 || sd < 1 || ad < 1) throw DataError("bad KNN model header: " + path);
  KnnRewardModel model(k, ss, sa);
  std::string line;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = csv::split_line(line);
    if (static_cast<int>(cells.size()) != sd + ad + 1)
      throw DataError(path + ": row " + std::to_string(lineno) + " malformed");
    Eigen::VectorXd s(sd), a(ad);
    const std::string ctx = path + " row " + std::to_string(lineno);
    for (int d = 0; d < sd; ++d) s[d] = csv::parse_double(cells[d], ctx);
    for (int d = 0; d < ad; ++d) a[d] = csv::parse_double(cells[sd + d], ctx);
    model.states_.push_back(std::move(s));
    model.actions_.push_back(std::move(a));
    model.values_.push_back(csv::parse_double(cells[sd + ad], ctx));
  }
  return model;
}

}  // namespace optirl
