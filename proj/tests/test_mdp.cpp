#include <doctest.h>

#include "optirl/mdp.hpp"
#include "optirl/option_set.hpp"
#include "support/oracles.hpp"

using namespace optirl;

namespace {

Trajectory tabular_traj(std::vector<std::tuple<int, int, int, bool>> steps, int terminal) {
  Trajectory t;
  for (auto [w, s, a, b] : steps)
    t.steps.push_back({w, StatePoint::tabular(s), ActionPoint::tabular(a), b});
  t.terminal_state = StatePoint::tabular(terminal);
  return t;
}

}  // namespace

TEST_SUITE("mdp") {
  TEST_CASE("discounted return: single step") {
    const auto traj = tabular_traj({{0, 0, 0, true}}, 1);
    const RewardFn one = [](const StatePoint&, int, const ActionPoint&) { return 1.0; };
    CHECK(discounted_return(traj, one, 0.9) == doctest::Approx(1.0));
  }

  TEST_CASE("discounted return: three steps, gamma 0.5 sums to 1.75") {
    const auto traj = tabular_traj({{0, 0, 0, true}, {0, 1, 0, false}, {0, 2, 1, false}}, 3);
    const RewardFn one = [](const StatePoint&, int, const ActionPoint&) { return 1.0; };
    CHECK(discounted_return(traj, one, 0.5) == doctest::Approx(1.75));
  }

  TEST_CASE("discounted return: zero reward") {
    const auto traj = tabular_traj({{0, 0, 0, true}, {0, 1, 1, false}}, 2);
    const RewardFn zero = [](const StatePoint&, int, const ActionPoint&) { return 0.0; };
    CHECK(discounted_return(traj, zero, 0.99) == 0.0);
  }

  TEST_CASE("discounted return: gamma 0 equals first-step reward") {
    const auto traj = tabular_traj({{0, 2, 1, true}, {0, 1, 0, false}}, 0);
    const RewardFn r = [](const StatePoint& s, int, const ActionPoint& a) {
      return 10.0 * s.id() + a.id();
    };
    CHECK(discounted_return(traj, r, 0.0) == doctest::Approx(21.0));
  }

  TEST_CASE("discounted return is linear in the reward") {
    const auto traj =
        tabular_traj({{0, 0, 1, true}, {1, 2, 0, true}, {1, 3, 1, false}}, 1);
    const RewardFn r1 = [](const StatePoint& s, int, const ActionPoint&) {
      return 0.5 * s.id() - 1.0;
    };
    const RewardFn r2 = [](const StatePoint&, int w, const ActionPoint& a) {
      return w + 2.0 * a.id();
    };
    const RewardFn sum = [&](const StatePoint& s, int w, const ActionPoint& a) {
      return r1(s, w, a) + r2(s, w, a);
    };
    const double gamma = 0.77;
    CHECK(discounted_return(traj, sum, gamma) ==
          doctest::Approx(discounted_return(traj, r1, gamma) +
                          discounted_return(traj, r2, gamma)).epsilon(1e-15));
  }

  TEST_CASE("discounted return: undefined reward names the step") {
    const auto traj = tabular_traj({{0, 0, 0, true}, {0, 1, 0, false}}, 2);
    const RewardFn bad = [](const StatePoint& s, int, const ActionPoint&) {
      return s.id() == 1 ? std::nan("") : 0.0;
    };
    CHECK_THROWS_WITH_AS(discounted_return(traj, bad, 0.9),
                         "reward undefined at step 1", NumericalError);
  }

  TEST_CASE("validate_trajectory") {
    testing::TabularOptionMdp mdp;
    OptionSet opts;
    testing::make_generic_instance(mdp, opts);

    SUBCASE("well-formed trajectory yields an empty report") {
      const auto traj = tabular_traj({{0, 0, 0, true}, {0, 1, 1, false}}, 2);
      CHECK(validate_trajectory(traj, opts).ok());
    }
    SUBCASE("option switch without term flag is flagged at t=1") {
      const auto traj = tabular_traj({{0, 0, 0, true}, {1, 1, 1, false}}, 2);
      const auto rep = validate_trajectory(traj, opts);
      REQUIRE(rep.violations.size() == 1);
      CHECK(rep.violations[0].step == 1);
    }
    SUBCASE("option index out of range") {
      const auto traj = tabular_traj({{5, 0, 0, true}}, 1);
      const auto rep = validate_trajectory(traj, opts);
      REQUIRE_FALSE(rep.ok());
      CHECK(rep.violations[0].what.find("out of range") != std::string::npos);
    }
    SUBCASE("missing b_0 flag") {
      const auto traj = tabular_traj({{0, 0, 0, false}}, 1);
      CHECK_FALSE(validate_trajectory(traj, opts).ok());
    }
    SUBCASE("state out of bounds") {
      const auto traj = tabular_traj({{0, 12, 0, true}}, 1);
      CHECK_FALSE(validate_trajectory(traj, opts).ok());
    }
  }

  TEST_CASE("state identity: exact values, quantized hash keys") {
    Eigen::VectorXd a(2), b(2);
    a << 0.1, 0.2;
    b << 0.1, 0.2 + 1e-12;
    const auto sa = StatePoint::vec(a), sb = StatePoint::vec(b);
    CHECK(sa == StatePoint::vec(a));
    CHECK_FALSE(sa == sb);  // never merged, even inside one quantum
    CHECK(sa.hash_key() == sb.hash_key());
  }
}
