#include "optirl/option_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "optirl/csv.hpp"

namespace optirl {

namespace {

using KV = std::map<std::string, std::string>;

KV parse_header(const std::string& line) {
  KV kv;
  std::istringstream is(line);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    const auto eq = tok.find('=');
    if (eq != std::string::npos) kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

void write_values(std::ofstream& out, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) out << csv::format_double(v[i]) << '\n';
}

Eigen::VectorXd read_values(std::ifstream& in, int n, const std::string& path) {
  Eigen::VectorXd v(n);
  std::string line;
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw DataError(path + ": truncated parameter file");
    v[i] = csv::parse_double(line, path);
  }
  return v;
}

void write_grid(std::ofstream& out, const RbfGrid& grid) {
  for (Eigen::Index k = 0; k < grid.centers.rows(); ++k) {
    for (Eigen::Index d = 0; d < grid.centers.cols(); ++d)
      out << csv::format_double(grid.centers(k, d)) << ',';
    out << '\n';
  }
}

RbfGrid read_grid(std::ifstream& in, int n, int dim, double delta, const std::string& path) {
  RbfGrid grid;
  grid.delta = delta;
  grid.centers.resize(n, dim);
  std::string line;
  for (int k = 0; k < n; ++k) {
    if (!std::getline(in, line)) throw DataError(path + ": truncated grid");
    const auto cells = csv::split_line(line);
    for (int d = 0; d < dim; ++d)
      grid.centers(k, d) = csv::parse_double(cells[d], path);
  }
  return grid;
}

void save_policy(const std::string& path, const IntraOptionPolicy& pol) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  if (const auto* b = dynamic_cast<const BoltzmannTabularPolicy*>(&pol)) {
    out << "family=boltzmann_tabular,n_states=" << b->n_states()
        << ",n_actions=" << b->n_actions()
        << ",temperature=" << csv::format_double(b->temperature()) << '\n';
    write_values(out, b->params());
    return;
  }
  if (const auto* g = dynamic_cast<const GaussianRbfPolicy*>(&pol)) {
    out << "family=gaussian_rbf,n_centers=" << g->grid().size()
        << ",state_dim=" << g->grid().centers.cols()
        << ",delta=" << csv::format_double(g->grid().delta)
        << ",sigma2=" << csv::format_double(g->sigma2()) << '\n';
    write_values(out, g->params());
    write_grid(out, g->grid());
    return;
  }
  throw DataError("save_policy: unknown policy family");
}

std::unique_ptr<IntraOptionPolicy> load_policy(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string header;
  std::getline(in, header);
  const KV kv = parse_header(header);
  const std::string family = kv.count("family") ? kv.at("family") : "";
  if (family == "boltzmann_tabular") {
    const int ns = std::stoi(kv.at("n_states"));
    const int na = std::stoi(kv.at("n_actions"));
    auto pol = std::make_unique<BoltzmannTabularPolicy>(ns, na, std::stod(kv.at("temperature")));
    pol->set_params(read_values(in, ns * na, path));
    return pol;
  }
  if (family == "gaussian_rbf") {
    const int n = std::stoi(kv.at("n_centers"));
    const int dim = std::stoi(kv.at("state_dim"));
    const Eigen::VectorXd theta = read_values(in, n, path);
    RbfGrid grid = read_grid(in, n, dim, std::stod(kv.at("delta")), path);
    auto pol = std::make_unique<GaussianRbfPolicy>(std::move(grid), std::stod(kv.at("sigma2")));
    pol->set_params(theta);
    return pol;
  }
  throw DataError(path + ": unknown policy family '" + family + "'");
}

void save_termination(const std::string& path, const SigmoidTermination& term) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  if (term.tabular_states() > 0) {
    out << "family=sigmoid_tabular,n_states=" << term.tabular_states() << '\n';
    write_values(out, term.params());
    return;
  }
  out << "family=sigmoid_rbf,n_centers=" << term.grid().size()
      << ",state_dim=" << term.grid().centers.cols()
      << ",delta=" << csv::format_double(term.grid().delta) << '\n';
  write_values(out, term.params());
  write_grid(out, term.grid());
}

SigmoidTermination load_termination(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string header;
  std::getline(in, header);
  const KV kv = parse_header(header);
  const std::string family = kv.count("family") ? kv.at("family") : "";
  if (family == "sigmoid_tabular") {
    const int ns = std::stoi(kv.at("n_states"));
    auto term = SigmoidTermination::tabular(ns);
    term.set_params(read_values(in, ns, path));
    return term;
  }
  if (family == "sigmoid_rbf") {
    const int n = std::stoi(kv.at("n_centers"));
    const int dim = std::stoi(kv.at("state_dim"));
    const Eigen::VectorXd vt = read_values(in, n, path);
    auto term = SigmoidTermination::rbf(read_grid(in, n, dim, std::stod(kv.at("delta")), path));
    term.set_params(vt);
    return term;
  }
  throw DataError(path + ": unknown termination family '" + family + "'");
}

void save_pi_omega(const std::string& path, const PolicyOverOptions& po) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  if (const auto* tab = dynamic_cast<const TabularPolicyOverOptions*>(&po)) {
    out << "family=tabular,n_states=" << tab->table().rows()
        << ",n_options=" << tab->table().cols() << '\n';
    for (Eigen::Index s = 0; s < tab->table().rows(); ++s) {
      for (Eigen::Index w = 0; w < tab->table().cols(); ++w) {
        if (w) out << ',';
        out << csv::format_double(tab->table()(s, w));
      }
      out << '\n';
    }
    return;
  }
  if (const auto* rule = dynamic_cast<const RulePolicyOverOptions*>(&po)) {
    out << "family=" << rule->family() << ",n_options=" << rule->n_options();
    for (const auto& [k, v] : rule->meta()) out << ',' << k << '=' << v;
    out << '\n';
    return;
  }
  throw DataError("save_pi_omega: unknown family");
}

}  // namespace

void save_option_set(const std::string& prefix, const OptionSet& opts) {
  for (int w = 0; w < opts.n_options(); ++w) {
    save_policy(prefix + "option" + std::to_string(w) + "_policy.csv",
                *opts.options[w].policy);
    save_termination(prefix + "option" + std::to_string(w) + "_termination.csv",
                     opts.options[w].termination);
  }
  save_pi_omega(prefix + "pi_omega.csv", *opts.policy_over_options);
  std::ofstream idx(prefix + "optionset.csv");
  idx << "n_options\n" << opts.n_options() << '\n';
}

OptionSet load_option_set(const std::string& prefix) {
  std::ifstream idx(prefix + "optionset.csv");
  if (!idx) throw DataError("cannot open " + prefix + "optionset.csv");
  std::string line;
  std::getline(idx, line);
  std::getline(idx, line);
  const int n = std::stoi(line);
  OptionSet opts;
  for (int w = 0; w < n; ++w) {
    OptionSpec spec;
    spec.policy = load_policy(prefix + "option" + std::to_string(w) + "_policy.csv");
    spec.termination =
        load_termination(prefix + "option" + std::to_string(w) + "_termination.csv");
    opts.options.push_back(std::move(spec));
  }
  const std::string po_path = prefix + "pi_omega.csv";
  std::ifstream in(po_path);
  if (!in) throw DataError("cannot open " + po_path);
  std::string header;
  std::getline(in, header);
  const KV kv = parse_header(header);
  if (kv.at("family") == "tabular") {
    const int ns = std::stoi(kv.at("n_states"));
    const int nw = std::stoi(kv.at("n_options"));
    Eigen::MatrixXd table(ns, nw);
    for (int s = 0; s < ns; ++s) {
      std::getline(in, line);
      const auto cells = csv::split_line(line);
      for (int w = 0; w < nw; ++w) table(s, w) = csv::parse_double(cells[w], po_path);
    }
    opts.policy_over_options = std::make_unique<TabularPolicyOverOptions>(table);
    return opts;
  }
  if (kv.at("family") == "car_subgoal_rule") {
    CarSubgoals goals;
    goals.p_min = std::stod(kv.at("p_min"));
    goals.v_min = std::stod(kv.at("v_min"));
    opts.policy_over_options = car_rule_policy_over_options(goals);
    return opts;
  }
  throw DataError(po_path + ": unknown policy-over-options family");
}

}  // namespace optirl
