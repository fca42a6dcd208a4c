#include <doctest.h>

#include "optirl/demo_io.hpp"
#include "optirl/expert_car.hpp"
#include "optirl/expert_fit.hpp"
#include "optirl/expert_four_rooms.hpp"
#include "optirl/rollout.hpp"
#include "optirl/sarsa.hpp"
#include "support/oracles.hpp"

using namespace optirl;

namespace {

OptionCriticConfig quick_oc() {
  OptionCriticConfig cfg;
  cfg.max_episodes = 20000;
  cfg.check_every = 500;
  cfg.goal_return_threshold = -40.0;
  cfg.seed = 12;
  return cfg;
}

const OptionSet& trained_fourrooms_expert() {
  static const OptionSet opts = option_critic_train(FourRoomsEnv(), quick_oc());
  return opts;
}

struct CarFixture {
  CarOnHillEnv env;
  CarSubgoals goals;
  GridPolicy pol1, pol2;
};

const CarFixture& trained_car_expert() {
  static const CarFixture fix = [] {
    CarFixture f;
    CarFqiConfig cfg;
    cfg.seed = 7;
    f.pol1 = fqi_suboption_train(f.env, 1, f.goals, cfg);
    f.pol2 = fqi_suboption_train(f.env, 2, f.goals, cfg);
    return f;
  }();
  return fix;
}

}  // namespace

TEST_SUITE("expert-gen") {
  TEST_CASE("option-critic policy-over-options rows are distributions") {
    const OptionSet& opts = trained_fourrooms_expert();
    const FourRoomsEnv env;
    for (int s = 0; s < env.n_cells(); ++s)
      CHECK_NOTHROW(opts.check_distribution(StatePoint::tabular(s)));
  }

  TEST_CASE("greedy option execution reaches the goal within 500 steps (slip on)") {
    const OptionSet& opts = trained_fourrooms_expert();
    const FourRoomsEnv env;
    const double ret = greedy_option_return(env, opts, 30, 500, 99);
    // discounted default-reward return of a 500-step failure is about -99
    CHECK(ret > -60.0);
  }

  TEST_CASE("expert steps-to-goal is within 1.5x of flat SARSA") {
    const OptionSet& opts = trained_fourrooms_expert();
    const FourRoomsEnv env;
    SarsaConfig sc;
    sc.episodes = 4000;
    sc.seed = 5;
    const auto sarsa = sarsa_train(env, default_reward(env), sc);
    auto flat_policy = greedy_policy(sarsa.q);

    Rng rng(123);
    auto steps_to_goal = [&](const std::function<int(StatePoint&, Rng&)>& run) {
      double total = 0;
      const int n = 40;
      for (int i = 0; i < n; ++i) {
        StatePoint s = env.initial_state(rng);
        total += run(s, rng);
      }
      return total / n;
    };
    const double flat_steps = steps_to_goal([&](StatePoint& s, Rng& r) {
      for (int t = 0; t < 500; ++t) {
        const StepResult res = env.step(s, flat_policy(s, r), r);
        s = res.next;
        if (res.done) return t + 1;
      }
      return 500;
    });
    const double option_steps = steps_to_goal([&](StatePoint& s, Rng& r) {
      int w = 0;
      Eigen::Index wi;
      opts.policy_over_options->probs(s).maxCoeff(&wi);
      w = static_cast<int>(wi);
      for (int t = 0; t < 500; ++t) {
        const auto* pol =
            dynamic_cast<const BoltzmannTabularPolicy*>(opts.options[w].policy.get());
        Eigen::Index ai;
        pol->action_probs(s.id()).maxCoeff(&ai);
        const StepResult res = env.step(s, ActionPoint::tabular(static_cast<int>(ai)), r);
        s = res.next;
        if (res.done) return t + 1;
        if (opts.options[w].termination.beta(s) >= 0.5) {
          opts.policy_over_options->probs(s).maxCoeff(&wi);
          w = static_cast<int>(wi);
        }
      }
      return 500;
    });
    CHECK(option_steps <= 1.5 * flat_steps);
  }

  TEST_CASE("every rollout records b_0 = 1 and consistent option switches") {
    const OptionSet& opts = trained_fourrooms_expert();
    const FourRoomsEnv env;
    const auto exec = executable_from_option_set(opts, 0.0, nullptr);
    const auto demos = rollout_options(env, exec, 500, 12, 77);
    CHECK(demos.size() == 12);
    for (const auto& d : demos) {
      CHECK(d.steps[0].term_flag);
      CHECK(validate_trajectory(d, opts).ok());
    }
  }

  TEST_CASE("rollouts are bit-reproducible for a fixed seed") {
    const OptionSet& opts = trained_fourrooms_expert();
    const FourRoomsEnv env;
    const auto exec = executable_from_option_set(opts, 0.0, nullptr);
    const auto a = rollout_options(env, exec, 300, 5, 42);
    const auto b = rollout_options(env, exec, 300, 5, 42);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
      REQUIRE(a[i].steps.size() == b[i].steps.size());
      for (size_t k = 0; k < a[i].steps.size(); ++k) {
        CHECK(a[i].steps[k].state == b[i].steps[k].state);
        CHECK(a[i].steps[k].action == b[i].steps[k].action);
      }
    }
  }

  TEST_CASE("epsilon = 1 produces uniform actions within 3 sigma") {
    const OptionSet& opts = trained_fourrooms_expert();
    const FourRoomsEnv env;
    auto random_action = [](const StatePoint&, Rng& rng) {
      return ActionPoint::tabular(static_cast<int>(rng.uniform_int(4)));
    };
    const auto exec = executable_from_option_set(opts, 1.0, random_action);
    const auto demos = rollout_options(env, exec, 500, 250, 7);
    Eigen::Vector4d counts = Eigen::Vector4d::Zero();
    double n = 0;
    for (const auto& d : demos)
      for (const auto& st : d.steps) {
        counts[st.action.id()] += 1;
        n += 1;
      }
    const double sigma = std::sqrt(n * 0.25 * 0.75);
    for (int a = 0; a < 4; ++a) CHECK(std::abs(counts[a] - 0.25 * n) <= 3 * sigma);
  }

  TEST_CASE("car subgoal-1 policy reaches the speed condition from the start") {
    const auto& fix = trained_car_expert();
    double p = fix.env.p0(), v = fix.env.v0();
    bool achieved = false;
    for (int t = 0; t < 200 && !achieved; ++t) {
      const StepResult res = fix.env.step_from(p, v, fix.pol1.act(p, v));
      p = res.next.values()[0];
      v = res.next.values()[1];
      if (res.done) break;
      achieved = fix.goals.subgoal1(res.next);
    }
    CHECK(achieved);
  }

  TEST_CASE("car subgoal-2 policy finishes the task from a fast valley state") {
    const auto& fix = trained_car_expert();
    double p = 0.3, v = 2.5;
    bool success = false;
    for (int t = 0; t < 200; ++t) {
      const StepResult res = fix.env.step_from(p, v, fix.pol2.act(p, v));
      p = res.next.values()[0];
      v = res.next.values()[1];
      if (res.done) {
        success = CarOnHillEnv::success(p, v);
        break;
      }
    }
    CHECK(success);
  }

  TEST_CASE("grid policy actions stay in the finite action set") {
    const auto& fix = trained_car_expert();
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
      const double a = fix.pol1.act(rng.uniform(-1, 1), rng.uniform(-3, 3));
      CHECK((a == -4.0 || a == 4.0));
    }
  }

  TEST_CASE("composed car expert solves the task; demos have one handoff") {
    const auto& fix = trained_car_expert();
    const auto exec = car_expert_executable(fix.pol1, fix.pol2, fix.goals, 0.0, {-4, 4});
    const auto demos = rollout_options(fix.env, exec, 300, 5, 11);
    for (const auto& d : demos) {
      CHECK(CarOnHillEnv::success(d.terminal_state.values()[0],
                                  d.terminal_state.values()[1]));
      int handoffs = 0;
      for (size_t t = 1; t < d.steps.size(); ++t)
        if (d.steps[t].term_flag) ++handoffs;
      CHECK(handoffs == 1);
    }
  }

  TEST_CASE("fitted parameters recover a synthetic linear-in-features expert") {
    RbfGrid grid = RbfGrid::uniform((Eigen::VectorXd(2) << -1, -3).finished(),
                                    (Eigen::VectorXd(2) << 1, 3).finished(), {5, 5});
    Eigen::VectorXd truth(grid.size());
    Rng rng(19);
    for (int i = 0; i < truth.size(); ++i) truth[i] = rng.normal();
    // synthetic demos: actions exactly linear in the features, one option
    std::vector<Trajectory> demos;
    for (int ep = 0; ep < 10; ++ep) {
      Trajectory t;
      t.episode_id = ep;
      for (int k = 0; k < 40; ++k) {
        Eigen::VectorXd sv(2);
        sv << rng.uniform(-1, 1), rng.uniform(-3, 3);
        const StatePoint s = StatePoint::vec(sv);
        Step st;
        st.option = 0;
        st.term_flag = k == 0;
        st.state = s;
        st.action = ActionPoint::scalar(truth.dot(grid.features(s)));
        t.steps.push_back(st);
      }
      t.terminal_state = t.steps.back().state;
      demos.push_back(std::move(t));
    }
    FitConfig fc;
    fc.grid = grid;
    fc.ridge_policy = 1e-8;
    const OptionSet fitted = fit_expert_params(
        demos, 1, fc,
        std::make_unique<RulePolicyOverOptions>(1, [](const StatePoint&) { return 0; },
                                                "always_zero"));
    const Eigen::VectorXd est = fitted.options[0].policy->params();
    CHECK(std::sqrt((est - truth).squaredNorm() / truth.size()) <= 1e-3);

    // bc_fit on single-option demos equals the per-option fit
    const GaussianRbfPolicy bc = bc_fit(demos, fc);
    CHECK((bc.params() - est).cwiseAbs().maxCoeff() <= 1e-10);
  }

  TEST_CASE("termination fit separates a labeled boundary") {
    RbfGrid grid = RbfGrid::uniform((Eigen::VectorXd(2) << -1, -3).finished(),
                                    (Eigen::VectorXd(2) << 1, 3).finished(), {5, 5});
    Rng rng(23);
    std::vector<Trajectory> demos;
    std::vector<StatePoint> positives;
    for (int ep = 0; ep < 8; ++ep) {
      Trajectory t;
      t.episode_id = ep;
      for (int k = 0; k < 30; ++k) {
        Eigen::VectorXd sv(2);
        sv << rng.uniform(-1, 1), rng.uniform(-3, 3);
        Step st;
        st.option = 0;
        st.state = StatePoint::vec(sv);
        st.action = ActionPoint::scalar(0.0);
        st.term_flag = k == 0 ? true : sv[0] > 0.4;  // separable label
        if (k > 0 && st.term_flag) positives.push_back(st.state);
        t.steps.push_back(st);
      }
      t.terminal_state = t.steps.back().state;
      demos.push_back(std::move(t));
    }
    FitConfig fc;
    fc.grid = grid;
    fc.ridge_termination = 1e-4;
    const OptionSet fitted = fit_expert_params(
        demos, 1, fc,
        std::make_unique<RulePolicyOverOptions>(1, [](const StatePoint&) { return 0; },
                                                "always_zero"));
    for (const auto& s : positives)
      CHECK(fitted.options[0].termination.beta(s) >= 0.5);
  }

  TEST_CASE("an option with no demonstration steps is an error") {
    std::vector<Trajectory> demos;
    Trajectory t;
    t.episode_id = 0;
    Eigen::VectorXd sv(2);
    sv << 0, 0;
    t.steps.push_back({0, StatePoint::vec(sv), ActionPoint::scalar(1.0), true});
    t.terminal_state = StatePoint::vec(sv);
    demos.push_back(t);
    FitConfig fc;
    fc.grid = RbfGrid::uniform((Eigen::VectorXd(2) << -1, -3).finished(),
                               (Eigen::VectorXd(2) << 1, 3).finished(), {3, 3});
    CHECK_THROWS_AS(
        fit_expert_params(demos, 2, fc,
                          std::make_unique<RulePolicyOverOptions>(
                              2, [](const StatePoint&) { return 0; }, "always_zero")),
        DataError);
  }

  TEST_CASE("car demo files round-trip losslessly") {
    const auto& fix = trained_car_expert();
    const auto exec = car_expert_executable(fix.pol1, fix.pol2, fix.goals, 0.3, {-4, 4});
    const auto demos = rollout_options(fix.env, exec, 300, 3, 5);
    write_demos("/tmp/optirl_car_demos.csv", demos);
    const auto back = read_demos("/tmp/optirl_car_demos.csv", false, false);
    REQUIRE(back.size() == demos.size());
    for (size_t e = 0; e < demos.size(); ++e) {
      REQUIRE(back[e].steps.size() == demos[e].steps.size());
      for (size_t k = 0; k < demos[e].steps.size(); ++k) {
        CHECK(back[e].steps[k].state == demos[e].steps[k].state);
        CHECK(back[e].steps[k].action == demos[e].steps[k].action);
      }
    }
  }
}
