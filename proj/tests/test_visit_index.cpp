#include <doctest.h>

#include "optirl/visit_index.hpp"
#include "support/oracles.hpp"

using namespace optirl;

namespace {

Trajectory traj_of(std::vector<std::tuple<int, int, int, bool>> steps, int terminal,
                   int ep = 0) {
  Trajectory t;
  t.episode_id = ep;
  for (auto [w, s, a, b] : steps)
    t.steps.push_back({w, StatePoint::tabular(s), ActionPoint::tabular(a), b});
  t.terminal_state = StatePoint::tabular(terminal);
  return t;
}

}  // namespace

TEST_SUITE("visit-index") {
  TEST_CASE("distinct triples get discounted weights 1 and 0.5") {
    const auto vi = build_visit_index({traj_of({{0, 0, 0, true}, {0, 1, 0, false}}, 2)}, 0.5);
    REQUIRE(vi.n_triples() == 2);
    CHECK(vi.mu()[0] == doctest::Approx(1.0));
    CHECK(vi.mu()[1] == doctest::Approx(0.5));
  }

  TEST_CASE("a repeat visit at t=2 accumulates 1 + 0.25") {
    const auto vi = build_visit_index(
        {traj_of({{0, 0, 0, true}, {0, 1, 0, false}, {0, 0, 0, false}}, 2)}, 0.5);
    REQUIRE(vi.n_triples() == 2);
    CHECK(vi.mu()[0] == doctest::Approx(1.25));
  }

  TEST_CASE("gamma=0 puts weight only on first steps") {
    const auto vi = build_visit_index(
        {traj_of({{0, 0, 0, true}, {0, 1, 0, false}}, 2),
         traj_of({{0, 0, 0, true}, {0, 2, 1, false}}, 2, 1)},
        0.0);
    CHECK(vi.mu()[0] == doctest::Approx(1.0));  // both demos, averaged
    for (int m = 1; m < vi.n_triples(); ++m) CHECK(vi.mu()[m] == 0.0);
    // mu1 still counts t=1 pairs with weight gamma^0 = 1
    CHECK(vi.mu1().sum() == doctest::Approx(1.0));
  }

  TEST_CASE("mu1 discounts from t=1 with gamma^(t-1)") {
    const auto vi = build_visit_index(
        {traj_of({{0, 0, 0, true}, {1, 1, 0, true}, {1, 2, 1, false}}, 3)}, 0.5);
    const int l1 = vi.find_pair(StatePoint::tabular(1), 1);
    const int l2 = vi.find_pair(StatePoint::tabular(2), 1);
    CHECK(vi.mu1()[l1] == doctest::Approx(1.0));
    CHECK(vi.mu1()[l2] == doctest::Approx(0.5));
    CHECK(vi.mu1()[vi.find_pair(StatePoint::tabular(0), 0)] == 0.0);
  }

  TEST_CASE("first-visit ordering is stable and lookups are dense") {
    const auto vi = build_visit_index(
        {traj_of({{1, 3, 1, true}, {0, 0, 0, true}, {1, 3, 1, true}}, 2)}, 0.9);
    CHECK(vi.n_triples() == 2);
    CHECK(vi.triple(0).option == 1);
    CHECK(vi.triple(1).option == 0);
    CHECK(vi.pair_of_triple(0) == 0);
    CHECK(vi.find_triple(StatePoint::tabular(3), 1, ActionPoint::tabular(1)) == 0);
    CHECK(vi.find_triple(StatePoint::tabular(3), 0, ActionPoint::tabular(1)) == -1);
  }

  TEST_CASE("empirical occupancies converge to the exact model values") {
    testing::TabularOptionMdp mdp;
    OptionSet opts;
    testing::make_generic_instance(mdp, opts);
    const int s0 = 0, w0 = 0;
    // empirical: many sampled trajectories starting from (s0, w0)
    auto demos = testing::sample_trajectories(mdp, opts, s0, 60, 4000, 99);
    // force the option draw at t=0 to w0 by filtering
    std::vector<Trajectory> kept;
    for (auto& d : demos)
      if (d.steps[0].option == w0) kept.push_back(std::move(d));
    const auto vi = build_visit_index(kept, mdp.gamma);
    const auto exact = testing::exact_visit_index(mdp, opts, s0, w0, 1);
    // compare a few well-visited triples within Monte-Carlo error
    int checked = 0;
    for (int m = 0; m < exact.n_triples() && checked < 6; ++m) {
      const auto& tr = exact.triple(m);
      if (exact.mu()[m] < 0.3) continue;
      const int em = vi.find_triple(tr.s, tr.option, tr.a);
      REQUIRE(em >= 0);
      CHECK(vi.mu()[em] ==
            doctest::Approx(exact.mu()[m]).epsilon(0.15));  // ~3 sigma at N=|kept|
      ++checked;
    }
    CHECK(checked >= 3);
  }

  TEST_CASE("scale_mu_by_policy multiplies the fitted density in") {
    testing::TabularOptionMdp mdp;
    OptionSet opts;
    testing::make_generic_instance(mdp, opts);
    auto vi = build_visit_index({traj_of({{0, 0, 0, true}, {0, 1, 1, false}}, 2)}, 0.9);
    const Eigen::VectorXd before = vi.mu();
    scale_mu_by_policy(vi, opts);
    for (int m = 0; m < vi.n_triples(); ++m) {
      const auto& tr = vi.triple(m);
      CHECK(vi.mu()[m] ==
            doctest::Approx(before[m] * opts.options[tr.option].policy->prob(tr.s, tr.a)));
    }
  }

  TEST_CASE("empty demonstrations are rejected") {
    CHECK_THROWS_AS(build_visit_index({}, 0.9), DataError);
  }
}
