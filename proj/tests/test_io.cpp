#include <doctest.h>

#include <cstdio>

#include "optirl/config.hpp"
#include "optirl/csv.hpp"
#include "optirl/demo_io.hpp"
#include "optirl/option_io.hpp"
#include "support/oracles.hpp"

using namespace optirl;

TEST_SUITE("io") {
  TEST_CASE("doubles survive the 17-digit round trip") {
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
      const double x = rng.normal() * std::pow(10.0, int(rng.uniform_int(7)) - 3);
      CHECK(csv::parse_double(csv::format_double(x), "t") == x);
    }
  }

  TEST_CASE("demo files round-trip losslessly") {
    Rng rng(2);
    std::vector<Trajectory> demos;
    for (int ep = 0; ep < 3; ++ep) {
      Trajectory t;
      t.episode_id = ep;
      for (int k = 0; k < 4; ++k) {
        Step st;
        st.option = k % 2;
        st.term_flag = k == 0 || k == 2;
        st.state = StatePoint::vec((Eigen::VectorXd(2) << rng.normal(), rng.normal()).finished());
        st.action = ActionPoint::scalar(rng.normal());
        t.steps.push_back(st);
      }
      t.terminal_state =
          StatePoint::vec((Eigen::VectorXd(2) << rng.normal(), rng.normal()).finished());
      demos.push_back(std::move(t));
    }
    const std::string path = "/tmp/optirl_demo_io_test.csv";
    write_demos(path, demos);
    const auto back = read_demos(path, false, false);
    REQUIRE(back.size() == demos.size());
    for (size_t e = 0; e < demos.size(); ++e) {
      REQUIRE(back[e].steps.size() == demos[e].steps.size());
      CHECK(back[e].terminal_state == demos[e].terminal_state);
      for (size_t k = 0; k < demos[e].steps.size(); ++k) {
        CHECK(back[e].steps[k].state == demos[e].steps[k].state);
        CHECK(back[e].steps[k].action == demos[e].steps[k].action);
        CHECK(back[e].steps[k].option == demos[e].steps[k].option);
        CHECK(back[e].steps[k].term_flag == demos[e].steps[k].term_flag);
      }
    }
  }

  TEST_CASE("tabular demos round-trip") {
    Trajectory t;
    t.episode_id = 0;
    t.steps.push_back({2, StatePoint::tabular(17), ActionPoint::tabular(3), true});
    t.terminal_state = StatePoint::tabular(99);
    const std::string path = "/tmp/optirl_demo_tab_test.csv";
    write_demos(path, {t});
    const auto back = read_demos(path, true, true);
    CHECK(back[0].steps[0].state.id() == 17);
    CHECK(back[0].steps[0].action.id() == 3);
    CHECK(back[0].terminal_state.id() == 99);
  }

  TEST_CASE("corrupted demo rows report their location") {
    const std::string path = "/tmp/optirl_demo_bad.csv";
    {
      FILE* f = fopen(path.c_str(), "w");
      fputs("episode,t,option,term_flag,s0,a0\n0,0,0,1,1.5,oops\n", f);
      fclose(f);
    }
    CHECK_THROWS_WITH_AS(read_demos(path, false, false),
                         doctest::Contains("row 2"), DataError);
  }

  TEST_CASE("config: dotted keys, overrides, and missing-key errors") {
    const std::string path = "/tmp/optirl_cfg_test.json";
    {
      FILE* f = fopen(path.c_str(), "w");
      fputs(R"({"domain":"fourrooms","fourrooms":{"slip_prob":0.25},"seed":5})", f);
      fclose(f);
    }
    Config cfg = Config::from_file(path);
    CHECK(cfg.get_double("fourrooms.slip_prob", 0) == 0.25);
    CHECK(cfg.get_int("seed", 0) == 5);
    CHECK(cfg.get_double("fourrooms.gamma", 0.99) == 0.99);
    cfg.set_override("fourrooms.slip_prob=0.5");
    cfg.set_override("irl.pi_omega_renorm=zero_pad");
    CHECK(cfg.get_double("fourrooms.slip_prob", 0) == 0.5);
    CHECK(cfg.get_string("irl.pi_omega_renorm", "") == "zero_pad");
    CHECK_THROWS_WITH_AS(cfg.require_string("missing.key"),
                         doctest::Contains("missing.key"), ConfigError);
  }

  TEST_CASE("config parse errors carry diagnostics") {
    const std::string path = "/tmp/optirl_cfg_bad.json";
    {
      FILE* f = fopen(path.c_str(), "w");
      fputs("{\"a\": }", f);
      fclose(f);
    }
    CHECK_THROWS_AS(Config::from_file(path), ConfigError);
  }

  TEST_CASE("option sets round-trip through parameter CSVs") {
    testing::TabularOptionMdp mdp;
    OptionSet opts;
    testing::make_generic_instance(mdp, opts);
    save_option_set("/tmp/optirl_ios_", opts);
    const OptionSet back = load_option_set("/tmp/optirl_ios_");
    REQUIRE(back.n_options() == 2);
    for (int w = 0; w < 2; ++w) {
      CHECK(back.options[w].policy->params() == opts.options[w].policy->params());
      CHECK(back.options[w].termination.params() == opts.options[w].termination.params());
    }
    const auto* tab = dynamic_cast<const TabularPolicyOverOptions*>(back.policy_over_options.get());
    REQUIRE(tab != nullptr);
    CHECK(tab->table() == dynamic_cast<const TabularPolicyOverOptions*>(
                              opts.policy_over_options.get())
                              ->table());
  }

  TEST_CASE("gaussian option sets round-trip including grids") {
    RbfGrid grid = RbfGrid::uniform((Eigen::VectorXd(2) << -1, -3).finished(),
                                    (Eigen::VectorXd(2) << 1, 3).finished(), {3, 3});
    OptionSet opts;
    for (int w = 0; w < 2; ++w) {
      OptionSpec spec;
      auto pol = std::make_unique<GaussianRbfPolicy>(grid, 0.01);
      Eigen::VectorXd theta(9);
      for (int i = 0; i < 9; ++i) theta[i] = 0.1 * i - 0.3 * w;
      pol->set_params(theta);
      spec.policy = std::move(pol);
      spec.termination = SigmoidTermination::rbf(grid);
      spec.termination.set_params(theta.reverse());
      opts.options.push_back(std::move(spec));
    }
    CarSubgoals goals;
    opts.policy_over_options = car_rule_policy_over_options(goals);
    save_option_set("/tmp/optirl_iog_", opts);
    const OptionSet back = load_option_set("/tmp/optirl_iog_");
    CHECK(back.options[1].policy->params() == opts.options[1].policy->params());
    Eigen::VectorXd s(2);
    s << 0.3, -1.0;
    CHECK(back.options[0].termination.beta(StatePoint::vec(s)) ==
          doctest::Approx(opts.options[0].termination.beta(StatePoint::vec(s))));
    CHECK(back.policy_over_options->probs(StatePoint::vec(s))[0] == 1.0);
  }
}
