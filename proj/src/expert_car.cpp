#include "optirl/expert_car.hpp"

#include <cmath>

namespace optirl {

namespace {

int clamp_bin(double x, double lo, double hi, int n) {
  const int b = static_cast<int>(std::floor((x - lo) / (hi - lo) * n));
  return std::min(n - 1, std::max(0, b));
}

struct Transition {
  double p, v, a;
  double r;
  double p2, v2;
  bool done;
};

}  // namespace

double GridPolicy::act(double p, double v) const {
  const int bp = clamp_bin(p, CarOnHillEnv::kPMin, CarOnHillEnv::kPMax, np);
  const int bv = clamp_bin(v, CarOnHillEnv::kVMin, CarOnHillEnv::kVMax, nv);
  return actions[choice[bp * nv + bv]];
}

GridPolicy fqi_suboption_train(const CarOnHillEnv& env, int subgoal,
                               const CarSubgoals& goals, const CarFqiConfig& cfg) {
  if (subgoal != 1 && subgoal != 2) throw ConfigError("fqi_suboption_train: subgoal 1 or 2");
  const int na = static_cast<int>(cfg.actions.size());
  Rng rng(cfg.seed + subgoal);

  auto sub_step = [&](double p, double v, double a, double& r, bool& done, double& p2,
                      double& v2) {
    const StepResult res = env.step_from(p, v, a);
    p2 = res.next.values()[0];
    v2 = res.next.values()[1];
    if (subgoal == 1) {
      if (goals.subgoal1(res.next)) {
        r = 1.0;
        done = true;
      } else if (res.done) {
        r = -1.0;
        done = true;
      } else {
        r = 0.0;
        done = false;
      }
    } else {
      r = res.reward;
      done = res.done;
    }
  };

  // uniform random exploration episodes from random in-bounds starts
  std::vector<Transition> data;
  data.reserve(cfg.n_transitions);
  while (static_cast<int>(data.size()) < cfg.n_transitions) {
    double p = rng.uniform(CarOnHillEnv::kPMin, CarOnHillEnv::kPMax);
    double v = rng.uniform(CarOnHillEnv::kVMin, CarOnHillEnv::kVMax);
    for (int t = 0; t < cfg.episode_horizon; ++t) {
      const double a = cfg.actions[rng.uniform_int(na)];
      Transition tr;
      tr.p = p;
      tr.v = v;
      tr.a = a;
      sub_step(p, v, a, tr.r, tr.done, tr.p2, tr.v2);
      data.push_back(tr);
      if (tr.done || static_cast<int>(data.size()) >= cfg.n_transitions) break;
      p = tr.p2;
      v = tr.v2;
    }
  }

  // grid-averaging FQI
  const int np = cfg.grid_p, nv = cfg.grid_v;
  const int cells = np * nv;
  auto cell_of = [&](double p, double v) {
    return clamp_bin(p, CarOnHillEnv::kPMin, CarOnHillEnv::kPMax, np) * nv +
           clamp_bin(v, CarOnHillEnv::kVMin, CarOnHillEnv::kVMax, nv);
  };
  std::vector<int> bin(data.size()), bin2(data.size()), act_idx(data.size());
  for (size_t i = 0; i < data.size(); ++i) {
    bin[i] = cell_of(data[i].p, data[i].v);
    bin2[i] = cell_of(data[i].p2, data[i].v2);
    int k = 0;
    for (int j = 0; j < na; ++j)
      if (cfg.actions[j] == data[i].a) k = j;
    act_idx[i] = k;
  }

  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(cells, na);
  Eigen::MatrixXd sum(cells, na);
  Eigen::MatrixXd cnt(cells, na);
  const double gamma = env.gamma();
  for (int it = 0; it < cfg.iterations; ++it) {
    sum.setZero();
    cnt.setZero();
    for (size_t i = 0; i < data.size(); ++i) {
      const double target =
          data[i].r + (data[i].done ? 0.0 : gamma * q.row(bin2[i]).maxCoeff());
      sum(bin[i], act_idx[i]) += target;
      cnt(bin[i], act_idx[i]) += 1.0;
    }
    for (int c = 0; c < cells; ++c)
      for (int a = 0; a < na; ++a)
        if (cnt(c, a) > 0) q(c, a) = sum(c, a) / cnt(c, a);
    if (!q.allFinite()) throw NumericalError("fqi_suboption_train: divergence");
  }

  GridPolicy pol;
  pol.np = np;
  pol.nv = nv;
  pol.actions = cfg.actions;
  pol.choice.resize(cells);
  for (int c = 0; c < cells; ++c) {
    Eigen::Index best = 0;
    q.row(c).maxCoeff(&best);
    pol.choice[c] = static_cast<int>(best);
  }
  return pol;
}

ExecutableOptions car_expert_executable(const GridPolicy& pol1, const GridPolicy& pol2,
                                        const CarSubgoals& goals, double epsilon,
                                        const std::vector<double>& actions) {
  if (epsilon < 0.0 || epsilon > 1.0) throw ConfigError("car_expert_executable: epsilon");
  ExecutableOptions exec;
  exec.n_options = 2;
  exec.select_option = [goals](const StatePoint& s, Rng&) {
    return goals.subgoal1(s) ? 1 : 0;
  };
  auto mk_act = [epsilon, actions](GridPolicy pol) {
    return [epsilon, actions, pol](const StatePoint& s, Rng& rng) {
      if (epsilon > 0.0 && rng.uniform() < epsilon)
        return ActionPoint::scalar(actions[rng.uniform_int(actions.size())]);
      return pol(s);
    };
  };
  exec.act.push_back(mk_act(pol1));
  exec.act.push_back(mk_act(pol2));
  exec.terminate.push_back(
      [goals](const StatePoint& s, Rng&) { return goals.subgoal1(s); });
  exec.terminate.push_back([](const StatePoint&, Rng&) { return false; });
  return exec;
}

std::unique_ptr<PolicyOverOptions> car_rule_policy_over_options(const CarSubgoals& goals) {
  std::map<std::string, std::string> meta = {{"p_min", std::to_string(goals.p_min)},
                                             {"v_min", std::to_string(goals.v_min)}};
  return std::make_unique<RulePolicyOverOptions>(
      2, [goals](const StatePoint& s) { return goals.subgoal1(s) ? 1 : 0; },
      "car_subgoal_rule", std::move(meta));
}

}  // namespace optirl
