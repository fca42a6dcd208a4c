#include "optirl/hessian_select.hpp"

#include <algorithm>
#include <map>

#include <Eigen/Dense>

#include "optirl/common.hpp"

namespace optirl {

const char* to_string(DefiniteClass c) {
  switch (c) {
    case DefiniteClass::kNegSemidef: return "NEG_SEMIDEF";
    case DefiniteClass::kPosSemidef: return "POS_SEMIDEF";
    case DefiniteClass::kIndefinite: return "INDEFINITE";
  }
  return "?";
}

int HessianReport::n_kept() const {
  int n = 0;
  for (const auto& f : features) n += f.kept ? 1 : 0;
  return n;
}

std::vector<int> HessianReport::kept_indices() const {
  std::vector<int> idx;
  for (int i = 0; i < n_features(); ++i)
    if (features[i].kept) idx.push_back(i);
  return idx;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> HessianReport::kept_traces() const {
  const auto idx = kept_indices();
  Eigen::VectorXd t(idx.size()), v(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) {
    t[i] = features[idx[i]].tr_theta;
    v[i] = features[idx[i]].tr_vartheta;
  }
  return {t, v};
}

namespace {

// Per-trajectory log-derivative pieces restricted to the touched parameters.
struct CompactSide {
  int dim = 0;
  std::vector<int> coords;                   // compact -> full
  Eigen::MatrixXd g;                         // dim x N
  std::vector<std::vector<SegMat>> blocks;   // per trajectory, compact offsets
  Eigen::VectorXd block_traces;              // per trajectory
};

struct StepDeriv {
  SegVec g;
  SegMat h;
  int full_offset_base = 0;
};

template <typename PerStepFn>
CompactSide build_side(const std::vector<Trajectory>& demos, const PerStepFn& per_step) {
  // pass 1: touched coordinate set
  std::vector<std::pair<int, int>> ranges;
  for (const auto& traj : demos)
    for (size_t t = 0; t < traj.steps.size(); ++t) {
      StepDeriv d;
      if (!per_step(traj, t, d)) continue;
      ranges.emplace_back(d.full_offset_base + d.g.offset, static_cast<int>(d.g.v.size()));
    }
  std::vector<int> coords;
  for (auto [off, len] : ranges)
    for (int i = 0; i < len; ++i) coords.push_back(off + i);
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  std::map<int, int> compact_of;
  for (size_t i = 0; i < coords.size(); ++i) compact_of[coords[i]] = static_cast<int>(i);

  CompactSide side;
  side.dim = static_cast<int>(coords.size());
  side.coords = std::move(coords);
  const int n = static_cast<int>(demos.size());
  side.g = Eigen::MatrixXd::Zero(std::max(side.dim, 1), n);
  side.blocks.resize(n);
  side.block_traces = Eigen::VectorXd::Zero(n);

  for (int tau = 0; tau < n; ++tau) {
    std::map<int, Eigen::MatrixXd> acc;  // compact offset -> summed block
    const auto& traj = demos[tau];
    for (size_t t = 0; t < traj.steps.size(); ++t) {
      StepDeriv d;
      if (!per_step(traj, t, d)) continue;
      const int g_off = compact_of.at(d.full_offset_base + d.g.offset);
      side.g.col(tau).segment(g_off, d.g.v.size()) += d.g.v;
      const int h_off = compact_of.at(d.full_offset_base + d.h.offset);
      auto it = acc.find(h_off);
      if (it == acc.end())
        acc.emplace(h_off, d.h.m);
      else
        it->second += d.h.m;
    }
    for (auto& [off, m] : acc) {
      side.block_traces[tau] += m.trace();
      side.blocks[tau].push_back({off, std::move(m)});
    }
  }
  return side;
}

Eigen::MatrixXd assemble_feature_hessian(const CompactSide& side,
                                         const Eigen::VectorXd& coeff) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(side.dim, side.dim);
  if (side.dim == 0) return h;
  h.noalias() = side.g * coeff.asDiagonal() * side.g.transpose();
  for (int tau = 0; tau < static_cast<int>(side.blocks.size()); ++tau)
    for (const auto& b : side.blocks[tau])
      h.block(b.offset, b.offset, b.m.rows(), b.m.cols()) += coeff[tau] * b.m;
  return 0.5 * (h + h.transpose());
}

DefiniteClass classify_matrix(const Eigen::MatrixXd& h, double eig_tol) {
  if (h.rows() == 0) return DefiniteClass::kNegSemidef;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success)
    throw NumericalError("classify_and_trace: eigendecomposition failed");
  const Eigen::VectorXd& lam = eig.eigenvalues();
  const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
  const double tol = eig_tol * scale;
  if (lam.maxCoeff() <= tol) return DefiniteClass::kNegSemidef;
  if (lam.minCoeff() >= -tol) return DefiniteClass::kPosSemidef;
  return DefiniteClass::kIndefinite;
}

struct EstimatorState {
  CompactSide theta;
  CompactSide vartheta;
  Eigen::MatrixXd returns;       // N x p, gamma^t-discounted feature returns
  Eigen::MatrixXd returns_hat;   // N x p, from t=1 with gamma^(t-1)
};

EstimatorState prepare(const std::vector<Trajectory>& demos, const Eigen::MatrixXd& psi,
                       const VisitIndex& vi, const OptionSet& opts, double gamma) {
  if (demos.empty()) throw DataError("estimate_feature_hessians: no demonstrations");
  const ParamLayout ltheta = ParamLayout::policies(opts);
  const ParamLayout lvar = ParamLayout::terminations(opts);

  EstimatorState st;
  st.theta = build_side(demos, [&](const Trajectory& traj, size_t t, StepDeriv& d) {
    const Step& s = traj.steps[t];
    const auto& pol = *opts.options[s.option].policy;
    d.g = pol.log_grad(s.state, s.action);
    d.h = pol.log_hessian(s.state, s.action);
    d.full_offset_base = ltheta.offset[s.option];
    return true;
  });
  st.vartheta = build_side(demos, [&](const Trajectory& traj, size_t t, StepDeriv& d) {
    if (t < 1) return false;
    const int prev = traj.steps[t - 1].option;
    const auto& term = opts.options[prev].termination;
    auto [g, h] = term.log_grad_hessian(traj.steps[t].state, traj.steps[t].term_flag);
    d.g = std::move(g);
    d.h = std::move(h);
    d.full_offset_base = lvar.offset[prev];
    return true;
  });

  const int n = static_cast<int>(demos.size());
  const int p = static_cast<int>(psi.cols());
  st.returns = Eigen::MatrixXd::Zero(n, p);
  st.returns_hat = Eigen::MatrixXd::Zero(n, p);
  for (int tau = 0; tau < n; ++tau) {
    double w = 1.0, w_prev = 1.0;
    const auto& traj = demos[tau];
    for (size_t t = 0; t < traj.steps.size(); ++t) {
      const Step& s = traj.steps[t];
      const int m = vi.find_triple(s.state, s.option, s.action);
      if (m < 0)
        throw DataError("feature undefined on a demo triple at episode " +
                        std::to_string(traj.episode_id) + " step " + std::to_string(t));
      st.returns.row(tau) += w * psi.row(m);
      if (t >= 1) st.returns_hat.row(tau) += w_prev * psi.row(m);
      w_prev = w;
      w *= gamma;
    }
  }
  return st;
}

}  // namespace

HessianReport estimate_feature_hessians(const std::vector<Trajectory>& demos,
                                        const Eigen::MatrixXd& psi, const VisitIndex& vi,
                                        const OptionSet& opts, double gamma) {
  const EstimatorState st = prepare(demos, psi, vi, opts, gamma);
  const int n = static_cast<int>(demos.size());
  const int p = static_cast<int>(psi.cols());
  HessianReport rep;
  rep.features.resize(p);
  rep.h_theta.reserve(p);
  rep.h_vartheta.reserve(p);
  for (int i = 0; i < p; ++i) {
    const Eigen::VectorXd c = st.returns.col(i) / n;
    const Eigen::VectorXd ch = st.returns_hat.col(i) / n;
    rep.h_theta.push_back(assemble_feature_hessian(st.theta, c));
    rep.h_vartheta.push_back(assemble_feature_hessian(st.vartheta, ch));
    rep.features[i].tr_theta = rep.h_theta.back().trace();
    rep.features[i].tr_vartheta = rep.h_vartheta.back().trace();
  }
  return rep;
}

void classify_and_trace(HessianReport& report, double eig_tol) {
  if (report.h_theta.size() != report.features.size() ||
      report.h_vartheta.size() != report.features.size())
    throw DataError("classify_and_trace: report is missing Hessian matrices");
  for (size_t i = 0; i < report.features.size(); ++i) {
    auto& f = report.features[i];
    f.class_theta = classify_matrix(report.h_theta[i], eig_tol);
    f.class_vartheta = classify_matrix(report.h_vartheta[i], eig_tol);
    f.kept = f.class_theta != DefiniteClass::kIndefinite &&
             f.class_vartheta != DefiniteClass::kIndefinite;
    f.sign = 1.0;
    if (f.kept && f.class_theta == DefiniteClass::kPosSemidef) {
      f.sign = -1.0;
      f.tr_theta = -f.tr_theta;
      f.tr_vartheta = -f.tr_vartheta;
    }
  }
  report.classified = true;
}

HessianReport estimate_and_classify(const std::vector<Trajectory>& demos,
                                    const Eigen::MatrixXd& psi, const VisitIndex& vi,
                                    const OptionSet& opts, double gamma, double eig_tol) {
  const EstimatorState st = prepare(demos, psi, vi, opts, gamma);
  const int n = static_cast<int>(demos.size());
  const int p = static_cast<int>(psi.cols());
  HessianReport rep;
  rep.features.resize(p);
  for (int i = 0; i < p; ++i) {
    auto& f = rep.features[i];
    {
      const Eigen::MatrixXd h = assemble_feature_hessian(st.theta, st.returns.col(i) / n);
      f.tr_theta = h.trace();
      f.class_theta = classify_matrix(h, eig_tol);
    }
    {
      const Eigen::MatrixXd h =
          assemble_feature_hessian(st.vartheta, st.returns_hat.col(i) / n);
      f.tr_vartheta = h.trace();
      f.class_vartheta = classify_matrix(h, eig_tol);
    }
    f.kept = f.class_theta != DefiniteClass::kIndefinite &&
             f.class_vartheta != DefiniteClass::kIndefinite;
    f.sign = 1.0;
    if (f.kept && f.class_theta == DefiniteClass::kPosSemidef) {
      f.sign = -1.0;
      f.tr_theta = -f.tr_theta;
      f.tr_vartheta = -f.tr_vartheta;
    }
  }
  rep.classified = true;
  return rep;
}

Eigen::VectorXd select_weights(const Eigen::VectorXd& tr_theta,
                               const Eigen::VectorXd& tr_vartheta) {
  if (tr_theta.size() != tr_vartheta.size() || tr_theta.size() == 0)
    throw DataError("select_weights: trace vectors must be nonempty and equal length");
  const double nt = tr_theta.norm();
  const double nv = tr_vartheta.norm();
  if (nt == 0.0 && nv == 0.0)
    throw NumericalError("no informative features: both trace vectors are zero");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(tr_theta.size());
  if (nt > 0.0) w -= tr_theta / nt;
  if (nv > 0.0) w -= tr_vartheta / nv;
  const double n = w.norm();
  if (n == 0.0)
    throw NumericalError("no informative features: normalized trace vectors cancel");
  return w / n;
}

}  // namespace optirl
