#include "optirl/experiments.hpp"

#include "optirl/parallel.hpp"
#include "optirl/rollout.hpp"

namespace optirl {

FourRoomsEnv fourrooms_env_from_config(const Config& cfg) {
  FourRoomsEnv env(cfg.get_double("fourrooms.slip_prob", 1.0 / 3.0),
                   cfg.get_double("fourrooms.gamma", 0.99));
  const int goal = cfg.get_int("fourrooms.goal", -1);
  if (goal >= 0) env.set_goal(goal);
  return env;
}

CarOnHillEnv car_env_from_config(const Config& cfg) {
  return CarOnHillEnv(cfg.get_double("car.dt", 1e-3), cfg.get_double("car.decision_dt", 0.1),
                      cfg.get_double("car.gamma", 0.95));
}

RecoverConfig recover_config(const Config& cfg, double gamma) {
  RecoverConfig rc;
  rc.gamma = gamma;
  const std::string mode = cfg.get_string("irl.pi_omega_renorm", "visited");
  if (mode == "visited") {
    rc.pi_omega_mode = PiOmegaMode::kVisitedRenorm;
  } else if (mode == "zero_pad") {
    rc.pi_omega_mode = PiOmegaMode::kZeroPad;
  } else {
    throw ConfigError("irl.pi_omega_renorm must be 'visited' or 'zero_pad'");
  }
  rc.mu_explicit_pi = cfg.get_bool("irl.mu_explicit_pi", false);
  rc.max_features = cfg.get_int("irl.max_features", 200);
  rc.eig_tol = cfg.get_double("irl.eig_tol", 1e-6);
  rc.sv_rel_tol = cfg.get_double("irl.sv_rel_tol", 1e-10);
  return rc;
}

FourRoomsPipeline fourrooms_expert_pipeline(const Config& cfg) {
  FourRoomsPipeline pipe{fourrooms_env_from_config(cfg), {}, {}};
  OptionCriticConfig oc;
  oc.n_options = cfg.get_int("expert.n_options", 4);
  oc.max_episodes = cfg.get_int("expert.max_episodes", 30000);
  oc.horizon = cfg.get_int("fourrooms.horizon", 500);
  oc.lr_critic = cfg.get_double("expert.lr_critic", 0.5);
  oc.lr_theta = cfg.get_double("expert.lr_theta", 0.25);
  oc.lr_vartheta = cfg.get_double("expert.lr_vartheta", 0.25);
  oc.deliberation_cost = cfg.get_double("expert.deliberation_cost", 0.01);
  oc.temp_theta = cfg.get_double("expert.temp_theta", 1.0);
  oc.temp_omega_start = cfg.get_double("expert.temp_omega_start", 1.0);
  oc.temp_omega_end = cfg.get_double("expert.temp_omega_end", 0.1);
  oc.goal_return_threshold = cfg.get_double("expert.goal_return_threshold", -40.0);
  oc.check_every = cfg.get_int("expert.check_every", 1000);
  oc.seed = cfg.get_seed("seed", 1);
  pipe.expert = option_critic_train(pipe.env, oc);

  const int n_demos = cfg.get_int("expert.n_demos", 50);
  const double epsilon = cfg.get_double("expert.epsilon", 0.0);
  auto random_action = [](const StatePoint&, Rng& rng) {
    return ActionPoint::tabular(static_cast<int>(rng.uniform_int(FourRoomsEnv::kActions)));
  };
  const auto exec = executable_from_option_set(pipe.expert, epsilon, random_action);
  pipe.demos = rollout_options(pipe.env, exec, oc.horizon, n_demos, oc.seed ^ 0xdeed5ull);
  return pipe;
}

FourRoomsRecovery fourrooms_recover_pipeline(const FourRoomsEnv& env,
                                             const OptionSet& expert,
                                             const std::vector<Trajectory>& demos,
                                             const Config& cfg) {
  FourRoomsRecovery out{recover(demos, expert, recover_config(cfg, env.gamma())), {}, {}};
  const std::string fill_mode = cfg.get_string("extend.tabular_fill", "mean");
  const TabularFill fill = fill_mode == "zero" ? TabularFill::kZero : TabularFill::kMean;
  const auto tables =
      tabular_option_rewards(out.result.values, out.result.vi, env.n_cells(),
                             FourRoomsEnv::kActions, expert.n_options(), fill);
  out.merged_raw = merge_tabular_rewards(tables, expert);
  const std::string norm = cfg.get_string("extend.normalize", "range_default");
  if (norm == "range_default") {
    out.merged = normalize_to_range(out.merged_raw, -1.0, 0.0);
  } else if (norm == "none") {
    out.merged = out.merged_raw;
  } else {
    throw ConfigError("extend.normalize must be 'range_default' or 'none' here");
  }
  return out;
}

SarsaConfig sarsa_config(const Config& cfg) {
  SarsaConfig sc;
  sc.episodes = cfg.get_int("learner.episodes", 2000);
  sc.horizon = cfg.get_int("fourrooms.horizon", 500);
  sc.lr = cfg.get_double("learner.lr", 0.1);
  sc.temp_start = cfg.get_double("learner.temp_start", 1.0);
  sc.temp_end = cfg.get_double("learner.temp_end", 0.05);
  sc.seed = cfg.get_seed("seed", 1);
  return sc;
}

std::vector<std::vector<double>> sarsa_reps(const FourRoomsEnv& env,
                                            const LearnerReward& reward,
                                            const SarsaConfig& base, int repetitions,
                                            std::uint64_t seed_base, int jobs) {
  std::vector<std::vector<double>> curves(repetitions);
  parallel_for(repetitions, jobs, [&](int r) {
    SarsaConfig sc = base;
    sc.seed = seed_base + static_cast<std::uint64_t>(r);
    curves[r] = sarsa_train(env, reward, sc).curve;
  });
  return curves;
}

std::map<double, std::vector<std::vector<double>>> fourrooms_transfer_reps(
    const FourRoomsEnv& env, const Eigen::MatrixXd& merged_reward,
    const std::vector<double>& alphas, const Config& cfg) {
  const int repetitions = cfg.get_int("learner.repetitions", 20);
  const SarsaConfig base = sarsa_config(cfg);
  const std::uint64_t seed = cfg.get_seed("seed", 1) ^ 0x7a5fe2ull;
  Rng goal_rng(seed);
  std::vector<FourRoomsEnv> envs;
  for (int r = 0; r < repetitions; ++r) envs.push_back(env.with_transfer_goal(goal_rng));

  std::map<double, std::vector<std::vector<double>>> out;
  for (double alpha : alphas) {
    if (alpha < 0.0 || alpha > 1.0) throw ConfigError("transfer alphas must be in [0,1]");
    std::vector<std::vector<double>> curves;
    for (int r = 0; r < repetitions; ++r) {
      const FourRoomsEnv& tenv = envs[r];
      const LearnerReward dflt = default_reward(tenv);
      auto table = std::make_shared<Eigen::MatrixXd>(merged_reward);
      LearnerReward blended = [dflt, table, alpha](const StatePoint& s, const ActionPoint& a,
                                                   const StatePoint& next) {
        return (1.0 - alpha) * dflt(s, a, next) + alpha * (*table)(s.id(), a.id());
      };
      SarsaConfig sc = base;
      sc.seed = seed + 977 * static_cast<std::uint64_t>(r);
      curves.push_back(sarsa_train(tenv, blended, sc).curve);
    }
    out[alpha] = std::move(curves);
  }
  return out;
}

CarPipeline car_expert_pipeline(const Config& cfg, double epsilon) {
  CarPipeline pipe;
  pipe.env = car_env_from_config(cfg);
  pipe.goals.p_min = cfg.get_double("expert.subgoal_p", -0.05);
  pipe.goals.v_min = cfg.get_double("expert.subgoal_v", 1.8);
  pipe.epsilon = epsilon;
  pipe.actions = {cfg.get_double("expert.action_lo", -4.0),
                  cfg.get_double("expert.action_hi", 4.0)};

  CarFqiConfig fq;
  fq.n_transitions = cfg.get_int("expert.fqi_transitions", 60000);
  fq.iterations = cfg.get_int("expert.fqi_iterations", 80);
  fq.grid_p = cfg.get_int("expert.fqi_grid_p", 56);
  fq.grid_v = cfg.get_int("expert.fqi_grid_v", 56);
  fq.actions = pipe.actions;
  fq.episode_horizon = cfg.get_int("car.horizon", 300);
  fq.seed = cfg.get_seed("seed", 7);
  pipe.pol1 = fqi_suboption_train(pipe.env, 1, pipe.goals, fq);
  pipe.pol2 = fqi_suboption_train(pipe.env, 2, pipe.goals, fq);

  const int n_demos = cfg.get_int("expert.n_demos", 20);
  const auto exec =
      car_expert_executable(pipe.pol1, pipe.pol2, pipe.goals, epsilon, pipe.actions);
  pipe.demos = rollout_options(pipe.env, exec, cfg.get_int("car.horizon", 300), n_demos,
                               fq.seed ^ 0xca8d05ull);

  pipe.fit.grid = RbfGrid::uniform(
      (Eigen::VectorXd(2) << CarOnHillEnv::kPMin, CarOnHillEnv::kVMin).finished(),
      (Eigen::VectorXd(2) << CarOnHillEnv::kPMax, CarOnHillEnv::kVMax).finished(),
      {cfg.get_int("fit.grid_p", 9), cfg.get_int("fit.grid_v", 9)},
      cfg.get_double("fit.delta", -1.0));
  pipe.fit.sigma2 = cfg.get_double("fit.sigma2", 0.01);
  pipe.fit.ridge_policy = cfg.get_double("fit.ridge_policy", 1e-6);
  pipe.fit.ridge_termination = cfg.get_double("fit.ridge_termination", 1e-2);
  pipe.fitted = fit_expert_params(pipe.demos, 2, pipe.fit,
                                  car_rule_policy_over_options(pipe.goals));
  return pipe;
}

CarRecovery car_recover_pipeline(const CarPipeline& pipe, const Config& cfg) {
  CarRecovery out{recover(pipe.demos, pipe.fitted, recover_config(cfg, pipe.env.gamma())),
                  {}, {}};
  // scale-only normalization keeps greedy structure intact
  Eigen::VectorXd values = out.result.values;
  const double scale = values.cwiseAbs().maxCoeff();
  if (cfg.get_string("extend.normalize", "unit_abs") == "unit_abs" && scale > 0.0)
    values /= scale;

  const int k = cfg.get_int("extend.knn_k", 5);
  // defaults: 0.1 of the state-box diagonal and of the action range
  const double diag = std::hypot(CarOnHillEnv::kPMax - CarOnHillEnv::kPMin,
                                 CarOnHillEnv::kVMax - CarOnHillEnv::kVMin);
  const double sigma_s = cfg.get_double("extend.sigma_s", 0.1 * diag);
  const double sigma_a =
      cfg.get_double("extend.sigma_a", 0.1 * (CarOnHillEnv::kAMax - CarOnHillEnv::kAMin));
  for (int w = 0; w < pipe.fitted.n_options(); ++w)
    out.per_option.emplace_back(k, sigma_s, sigma_a);
  for (int m = 0; m < out.result.vi.n_triples(); ++m) {
    const auto& tr = out.result.vi.triple(m);
    out.per_option[tr.option].add(tr.s, tr.a, values[m]);
  }
  std::vector<FlatReward> fns;
  for (int w = 0; w < pipe.fitted.n_options(); ++w) {
    const KnnRewardModel& model = out.per_option[w];
    fns.push_back(
        [model](const StatePoint& s, const ActionPoint& a) { return model.query(s, a); });
  }
  out.merged = merge_option_rewards(std::move(fns), pipe.fitted);
  return out;
}

FqiConfig fqi_config(const Config& cfg) {
  FqiConfig fc;
  fc.iterations = cfg.get_int("learner.fqi_iterations", 30);
  fc.n_action_grid = cfg.get_int("learner.action_grid", 11);
  fc.regressor = cfg.get_string("learner.regressor", "extra_trees");
  fc.seed = cfg.get_seed("seed", 7);
  fc.eval_episodes = cfg.get_int("learner.eval_episodes", 1);
  fc.eval_horizon = cfg.get_int("car.horizon", 300);
  fc.eval_start_jitter = cfg.get_double("learner.eval_start_jitter", 0.0);
  return fc;
}

std::vector<Eigen::Vector2d> car_position_trace(
    const CarOnHillEnv& env, const std::function<ActionPoint(const StatePoint&, Rng&)>& policy,
    int steps) {
  Rng rng(0);
  std::vector<Eigen::Vector2d> trace;
  double p = env.p0(), v = env.v0();
  for (int t = 0; t < steps; ++t) {
    trace.emplace_back(p, v);
    Eigen::VectorXd sv(2);
    sv << p, v;
    const StepResult res = env.step_from(p, v, policy(StatePoint::vec(sv), rng).scalar_value());
    p = res.next.values()[0];
    v = res.next.values()[1];
    if (res.done) break;
  }
  return trace;
}

}  // namespace optirl
