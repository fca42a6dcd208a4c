#include "optirl/fqi.hpp"

#include <memory>

namespace optirl {

std::vector<CarTransition> collect_transitions(const CarOnHillEnv& env, int n,
                                               int horizon, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CarTransition> data;
  data.reserve(n);
  while (static_cast<int>(data.size()) < n) {
    double p = rng.uniform(CarOnHillEnv::kPMin, CarOnHillEnv::kPMax);
    double v = rng.uniform(CarOnHillEnv::kVMin, CarOnHillEnv::kVMax);
    for (int t = 0; t < horizon && static_cast<int>(data.size()) < n; ++t) {
      const double a = rng.uniform(CarOnHillEnv::kAMin, CarOnHillEnv::kAMax);
      const StepResult res = env.step_from(p, v, a);
      CarTransition tr;
      tr.s << p, v;
      tr.a = a;
      tr.s2 << res.next.values()[0], res.next.values()[1];
      tr.done = res.done;
      data.push_back(tr);
      if (res.done) break;
      p = tr.s2[0];
      v = tr.s2[1];
    }
  }
  return data;
}

FqiResult fqi_train(const CarOnHillEnv& env, const std::vector<CarTransition>& transitions,
                    const TransitionReward& reward, const FqiConfig& cfg) {
  if (transitions.empty()) throw DataError("fqi_train: empty transition set");
  const int n = static_cast<int>(transitions.size());
  const int na = cfg.n_action_grid;
  if (na < 2) throw ConfigError("fqi_train: n_action_grid >= 2");
  Eigen::VectorXd actions(na);
  for (int i = 0; i < na; ++i)
    actions[i] = CarOnHillEnv::kAMin +
                 (CarOnHillEnv::kAMax - CarOnHillEnv::kAMin) * i / double(na - 1);

  Eigen::MatrixXd x(n, 3);
  Eigen::VectorXd r(n);
  for (int i = 0; i < n; ++i) {
    x(i, 0) = transitions[i].s[0];
    x(i, 1) = transitions[i].s[1];
    x(i, 2) = transitions[i].a;
    r[i] = reward(transitions[i]);
  }

  auto model = std::make_shared<std::unique_ptr<Regressor>>();
  auto q_fn = [model](double p, double v, double a) {
    Eigen::RowVectorXd row(3);
    row << p, v, a;
    return (*model)->predict(row);
  };
  auto greedy_action = [q_fn, actions](double p, double v) {
    double best = -1e300;
    double arg = actions[0];
    for (Eigen::Index i = 0; i < actions.size(); ++i) {
      const double q = q_fn(p, v, actions[i]);
      if (q > best) {
        best = q;
        arg = actions[i];
      }
    }
    return arg;
  };

  FqiResult res;
  const double gamma = env.gamma();
  Eigen::VectorXd y = r;
  for (int it = 0; it < cfg.iterations; ++it) {
    auto next = make_regressor(cfg.regressor, cfg.seed + 1000 * it);
    next->fit(x, y);
    *model = std::move(next);
    // evaluation rollouts under the default reward
    Rng eval_rng(cfg.seed ^ 0x5add5eedull);
    double total = 0.0;
    for (int ep = 0; ep < cfg.eval_episodes; ++ep) {
      double p = env.p0(), v = env.v0();
      if (cfg.eval_start_jitter > 0.0) {
        p += eval_rng.uniform(-cfg.eval_start_jitter, cfg.eval_start_jitter);
        v += eval_rng.uniform(-cfg.eval_start_jitter, cfg.eval_start_jitter);
      }
      double ret = 0.0, disc = 1.0;
      for (int t = 0; t < cfg.eval_horizon; ++t) {
        const StepResult step = env.step_from(p, v, greedy_action(p, v));
        ret += disc * step.reward;
        disc *= gamma;
        p = step.next.values()[0];
        v = step.next.values()[1];
        if (step.done) break;
      }
      total += ret;
    }
    res.curve.push_back(total / cfg.eval_episodes);
    if (it + 1 == cfg.iterations) break;
    // regression targets for the next iterate
    for (int i = 0; i < n; ++i) {
      double vmax = 0.0;
      if (!transitions[i].done) {
        vmax = -1e300;
        for (Eigen::Index k = 0; k < actions.size(); ++k)
          vmax = std::max(vmax, q_fn(transitions[i].s2[0], transitions[i].s2[1], actions[k]));
      }
      y[i] = r[i] + gamma * (transitions[i].done ? 0.0 : vmax);
    }
  }
  res.q = q_fn;
  res.policy = [greedy_action](const StatePoint& s, Rng&) {
    return ActionPoint::scalar(greedy_action(s.values()[0], s.values()[1]));
  };
  return res;
}

}  // namespace optirl
