#include "optirl/recover.hpp"

#include "optirl/csv.hpp"

namespace optirl {

namespace {

template <typename Fn>
auto phase(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(name) + ": " + e.what());
  } catch (const DataError& e) {
    throw DataError(std::string(name) + ": " + e.what());
  }
}

}  // namespace

RecoverResult recover(const std::vector<Trajectory>& demos, const OptionSet& opts,
                      const RecoverConfig& cfg) {
  RecoverResult res;
  res.vi = phase("phase1/visit-index", [&] {
    VisitIndex vi = build_visit_index(demos, cfg.gamma);
    if (cfg.mu_explicit_pi) scale_mu_by_policy(vi, opts);
    return vi;
  });
  res.c1 = phase("phase1/policy-constraint",
                 [&] { return build_policy_constraint(res.vi, opts); });
  res.c2 = phase("phase1/termination-constraint", [&] {
    return build_termination_constraint(res.vi, opts, cfg.pi_omega_mode);
  });
  res.nullspace = phase("phase1/nullspace", [&] {
    return qfeature_nullspace(res.c1, res.c2, cfg.max_features, cfg.sv_rel_tol);
  });
  res.phi = res.nullspace.phi;
  res.advantage = phase("phase2/advantage", [&] {
    return advantage_features(res.phi, res.vi, opts, cfg.pi_omega_mode);
  });
  res.psi = phase("phase2/shaping",
                  [&] { return shape_rewards(res.phi, res.advantage, res.vi, opts); });
  res.report = phase("phase3/hessians", [&] {
    return estimate_and_classify(demos, res.psi, res.vi, opts, cfg.gamma, cfg.eig_tol);
  });
  const auto kept = res.report.kept_indices();
  if (kept.empty())
    throw NumericalError("phase3/selection: every reward feature was discarded");
  const auto [tr_theta, tr_vartheta] = res.report.kept_traces();
  const Eigen::VectorXd w_kept =
      phase("phase3/selection", [&] { return select_weights(tr_theta, tr_vartheta); });
  res.weights = Eigen::VectorXd::Zero(res.psi.cols());
  for (size_t i = 0; i < kept.size(); ++i)
    res.weights[kept[i]] = res.report.features[kept[i]].sign * w_kept[i];
  res.values = res.psi * res.weights;
  return res;
}

double nullspace_residual(const RecoverResult& res) {
  if (res.nullspace.sigma_max <= 0.0) return 0.0;
  const double r1 =
      res.c1.rows() > 0 ? (res.c1 * res.phi).cwiseAbs().maxCoeff() : 0.0;
  const double r2 =
      res.c2.rows() > 0 ? (res.c2 * res.phi).cwiseAbs().maxCoeff() : 0.0;
  return std::max(r1, r2) / res.nullspace.sigma_max;
}

namespace {

void key_columns(std::vector<std::string>& header, const VisitIndex& vi) {
  const auto& t0 = vi.triple(0);
  header.push_back("option");
  if (t0.s.is_tabular()) {
    header.push_back("s0");
  } else {
    for (Eigen::Index i = 0; i < t0.s.values().size(); ++i)
      header.push_back("s" + std::to_string(i));
  }
  if (t0.a.is_tabular()) {
    header.push_back("a0");
  } else {
    for (Eigen::Index i = 0; i < t0.a.values().size(); ++i)
      header.push_back("a" + std::to_string(i));
  }
}

void key_cells(std::vector<std::string>& row, const VisitIndex::Triple& t) {
  row.push_back(std::to_string(t.option));
  if (t.s.is_tabular()) {
    row.push_back(std::to_string(t.s.id()));
  } else {
    for (Eigen::Index i = 0; i < t.s.values().size(); ++i)
      row.push_back(csv::format_double(t.s.values()[i]));
  }
  if (t.a.is_tabular()) {
    row.push_back(std::to_string(t.a.id()));
  } else {
    for (Eigen::Index i = 0; i < t.a.values().size(); ++i)
      row.push_back(csv::format_double(t.a.values()[i]));
  }
}

}  // namespace

void write_features_csv(const std::string& path, const RecoverResult& res) {
  csv::Table t;
  key_columns(t.header, res.vi);
  t.header.push_back("mu");
  const int p = static_cast<int>(res.phi.cols());
  for (int i = 0; i < p; ++i) t.header.push_back("phi" + std::to_string(i));
  for (int i = 0; i < p; ++i) t.header.push_back("psi" + std::to_string(i));
  for (int m = 0; m < res.vi.n_triples(); ++m) {
    std::vector<std::string> row;
    key_cells(row, res.vi.triple(m));
    row.push_back(csv::format_double(res.vi.mu()[m]));
    for (int i = 0; i < p; ++i) row.push_back(csv::format_double(res.phi(m, i)));
    for (int i = 0; i < p; ++i) row.push_back(csv::format_double(res.psi(m, i)));
    t.rows.push_back(std::move(row));
  }
  csv::write_file(path, t);
}

void write_hessian_report_csv(const std::string& path, const HessianReport& report) {
  csv::Table t;
  t.header = {"feature", "class_theta", "class_vartheta", "tr_theta", "tr_vartheta",
              "kept", "sign"};
  for (int i = 0; i < report.n_features(); ++i) {
    const auto& f = report.features[i];
    t.rows.push_back({std::to_string(i), to_string(f.class_theta),
                      to_string(f.class_vartheta), csv::format_double(f.tr_theta),
                      csv::format_double(f.tr_vartheta), f.kept ? "1" : "0",
                      csv::format_double(f.sign)});
  }
  csv::write_file(path, t);
}

void write_reward_csv(const std::string& path, const VisitIndex& vi,
                      const Eigen::VectorXd& values) {
  csv::Table t;
  key_columns(t.header, vi);
  t.header.push_back("value");
  for (int m = 0; m < vi.n_triples(); ++m) {
    std::vector<std::string> row;
    key_cells(row, vi.triple(m));
    row.push_back(csv::format_double(values[m]));
    t.rows.push_back(std::move(row));
  }
  csv::write_file(path, t);
}

}  // namespace optirl
