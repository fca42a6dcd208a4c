#include <doctest.h>

#include "optirl/evaluate.hpp"
#include "optirl/fqi.hpp"
#include "optirl/sarsa.hpp"
#include "support/oracles.hpp"

using namespace optirl;

TEST_SUITE("learners") {
  TEST_CASE("sarsa with zero reward leaves Q at zero") {
    FourRoomsEnv env;
    SarsaConfig cfg;
    cfg.episodes = 50;
    const LearnerReward zero = [](const StatePoint&, const ActionPoint&, const StatePoint&) {
      return 0.0;
    };
    const auto res = sarsa_train(env, zero, cfg);
    CHECK(res.q.cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("sarsa updates only visited entries") {
    FourRoomsEnv env;
    SarsaConfig cfg;
    cfg.episodes = 3;
    cfg.horizon = 10;
    const auto res = sarsa_train(env, default_reward(env), cfg);
    int touched = 0;
    for (int s = 0; s < env.n_cells(); ++s)
      for (int a = 0; a < 4; ++a)
        if (res.q(s, a) != 0.0) ++touched;
    CHECK(touched <= 3 * 10);
    CHECK(touched > 0);
  }

  TEST_CASE("sarsa is bit-reproducible under a fixed seed") {
    FourRoomsEnv env;
    SarsaConfig cfg;
    cfg.episodes = 40;
    const auto a = sarsa_train(env, default_reward(env), cfg);
    const auto b = sarsa_train(env, default_reward(env), cfg);
    CHECK(a.curve == b.curve);
    CHECK((a.q - b.q).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("sarsa on the default reward reaches the goal greedily") {
    FourRoomsEnv env;
    SarsaConfig cfg;
    cfg.episodes = 2000;
    cfg.seed = 3;
    const auto res = sarsa_train(env, default_reward(env), cfg);
    auto pol = greedy_policy(res.q);
    Rng rng(17);
    int reached = 0;
    const int trials = 20;
    for (int i = 0; i < trials; ++i) {
      StatePoint s = env.initial_state(rng);
      for (int t = 0; t < 500; ++t) {
        const StepResult step = env.step(s, pol(s, rng), rng);
        s = step.next;
        if (step.done) {
          ++reached;
          break;
        }
      }
    }
    CHECK(reached >= 19);
  }

  TEST_CASE("fqi with gamma = 0 regresses the immediate reward") {
    CarOnHillEnv env(1e-3, 0.1, 0.0);
    const auto transitions = collect_transitions(env, 600, 100, 5);
    const TransitionReward reward = [](const CarTransition& tr) {
      return tr.s[0] > 0 ? 1.0 : -1.0;  // depends only on the inputs
    };
    FqiConfig cfg;
    cfg.iterations = 3;
    cfg.regressor = "extra_trees";
    const auto res = fqi_train(env, transitions, reward, cfg);
    // Q should approximate the one-step reward everywhere it has data
    double err = 0;
    int n = 0;
    for (const auto& tr : transitions) {
      err += std::abs(res.q(tr.s[0], tr.s[1], tr.a) - reward(tr));
      ++n;
    }
    CHECK(err / n <= 0.2);
  }

  TEST_CASE("fqi on a finite deterministic chain matches value iteration") {
    // states 0..4 on a line embedded in (p, v); action +1 moves right,
    // reward 1 on arriving at 4 which is terminal
    const double gamma = 0.9;
    std::vector<CarTransition> data;
    for (int s = 0; s < 4; ++s)
      for (int rep = 0; rep < 3; ++rep) {
        CarTransition tr;
        tr.s << s * 0.1, 0.0;
        tr.a = 1.0;
        tr.s2 << (s + 1) * 0.1, 0.0;
        tr.done = s + 1 == 4;
        data.push_back(tr);
      }
    CarOnHillEnv env(1e-3, 0.1, gamma);
    const TransitionReward reward = [](const CarTransition& tr) {
      return tr.s2[0] > 0.35 ? 1.0 : 0.0;
    };
    FqiConfig cfg;
    cfg.iterations = 200;
    cfg.regressor = "knn";
    cfg.n_action_grid = 2;
    const auto res = fqi_train(env, data, reward, cfg);
    for (int s = 0; s < 4; ++s) {
      const double expected = std::pow(gamma, 3 - s);
      CHECK(res.q(s * 0.1, 0.0, 1.0) == doctest::Approx(expected).epsilon(1e-3));
    }
  }

  TEST_CASE("extra trees regressor fits a smooth function") {
    Rng rng(7);
    Eigen::MatrixXd x(800, 2);
    Eigen::VectorXd y(800);
    for (int i = 0; i < 800; ++i) {
      x(i, 0) = rng.uniform(-1, 1);
      x(i, 1) = rng.uniform(-1, 1);
      y[i] = std::sin(3 * x(i, 0)) + x(i, 1) * x(i, 1);
    }
    ExtraTreesRegressor reg(40, 2, 0, 5);
    reg.fit(x, y);
    double err = 0;
    for (int i = 0; i < 100; ++i) {
      Eigen::RowVectorXd q(2);
      q << rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9);
      err += std::abs(reg.predict(q) - (std::sin(3 * q[0]) + q[1] * q[1]));
    }
    CHECK(err / 100 <= 0.15);
  }

  TEST_CASE("regressors are seed-deterministic") {
    Rng rng(7);
    Eigen::MatrixXd x(100, 2);
    Eigen::VectorXd y(100);
    for (int i = 0; i < 100; ++i) {
      x(i, 0) = rng.uniform(-1, 1);
      x(i, 1) = rng.uniform(-1, 1);
      y[i] = x(i, 0) - x(i, 1);
    }
    ExtraTreesRegressor a(10, 2, 0, 42), b(10, 2, 0, 42);
    a.fit(x, y);
    b.fit(x, y);
    Eigen::RowVectorXd q(2);
    q << 0.1, 0.2;
    CHECK(a.predict(q) == b.predict(q));
  }

  TEST_CASE("evaluate_policy: deterministic setting has zero stderr") {
    CarOnHillEnv env;
    const auto policy = [](const StatePoint&, Rng&) { return ActionPoint::scalar(4.0); };
    const auto eval = evaluate_policy(env, policy, 8, 3, 50);
    CHECK(eval.stderr_ == 0.0);
  }

  TEST_CASE("evaluate_policy stderr shrinks like 1/sqrt(n)") {
    FourRoomsEnv env;
    const auto policy = [](const StatePoint&, Rng& rng) {
      return ActionPoint::tabular(static_cast<int>(rng.uniform_int(4)));
    };
    const auto small = evaluate_policy(env, policy, 100, 5, 100);
    const auto large = evaluate_policy(env, policy, 1600, 5, 100);
    CHECK(large.stderr_ <= small.stderr_ * 0.4);  // expect factor 1/4, noise slack
    CHECK(small.stderr_ > 0.0);
  }

  TEST_CASE("evaluate_policy is reproducible for a fixed seed") {
    FourRoomsEnv env;
    const auto policy = [](const StatePoint&, Rng& rng) {
      return ActionPoint::tabular(static_cast<int>(rng.uniform_int(4)));
    };
    const auto a = evaluate_policy(env, policy, 50, 11, 200);
    const auto b = evaluate_policy(env, policy, 50, 11, 200);
    CHECK(a.mean == b.mean);
    CHECK(a.stderr_ == b.stderr_);
  }
}
