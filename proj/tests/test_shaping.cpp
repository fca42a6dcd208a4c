#include <doctest.h>

#include "optirl/irl_shaping.hpp"
#include "support/oracles.hpp"

using namespace optirl;

namespace {

Eigen::VectorXd true_q_vector(const testing::TabularOptionMdp& mdp, const OptionSet& opts,
                              const VisitIndex& vi) {
  const auto q_u = testing::solve_q_u(mdp, opts);
  Eigen::VectorXd q(vi.n_triples());
  for (int m = 0; m < vi.n_triples(); ++m)
    q[m] = q_u[vi.triple(m).option](vi.triple(m).s.id(), vi.triple(m).a.id());
  return q;
}

// independent evaluation of the shaping chain: R' = Q_U - U(w, s)
Eigen::VectorXd oracle_shaped(const testing::TabularOptionMdp& mdp, const OptionSet& opts,
                              const VisitIndex& vi) {
  const Eigen::MatrixXd q_omega = testing::solve_q_omega(mdp, opts);
  const Eigen::MatrixXd u = testing::option_value_on_arrival(mdp, opts, q_omega);
  const auto q_u = testing::solve_q_u(mdp, opts);
  Eigen::VectorXd r(vi.n_triples());
  for (int m = 0; m < vi.n_triples(); ++m) {
    const auto& tr = vi.triple(m);
    r[m] = q_u[tr.option](tr.s.id(), tr.a.id()) - u(tr.option, tr.s.id());
  }
  return r;
}

}  // namespace

TEST_SUITE("shaping") {
  TEST_CASE("single option: advantage features vanish") {
    testing::TabularOptionMdp mdp;
    OptionSet opts;
    testing::make_generic_instance(mdp, opts);
    OptionSet flat;
    flat.options.push_back(opts.options[0]);
    flat.policy_over_options =
        std::make_unique<TabularPolicyOverOptions>(Eigen::MatrixXd::Ones(4, 1));
    const auto vi = testing::exact_visit_index(mdp, flat, 0, 0, 1);
    const Eigen::MatrixXd phi = Eigen::MatrixXd::Random(vi.n_triples(), 3);
    CHECK(advantage_features(phi, vi, flat).cwiseAbs().maxCoeff() <= 1e-14);
  }

  TEST_CASE("action-constant features with deterministic pi_Omega have zero advantage") {
    testing::TabularOptionMdp mdp;
    OptionSet opts;
    testing::make_generic_instance(mdp, opts);
    Eigen::MatrixXd det(4, 2);
    det << 1, 0, 0, 1, 1, 0, 0, 1;
    opts.policy_over_options = std::make_unique<TabularPolicyOverOptions>(det);
    VisitIndex vi;
    // only rule-consistent pairs visited
    for (int s = 0; s < 4; ++s) {
      const int w = s % 2;
      for (int a = 0; a < 2; ++a) vi.add_triple(StatePoint::tabular(s), w, ActionPoint::tabular(a));
    }
    vi.resize_weights();
    vi.mutable_mu().setOnes();
    vi.mutable_mu1().setOnes();
    Eigen::MatrixXd phi(vi.n_triples(), 1);
    for (int m = 0; m < vi.n_triples(); ++m) phi(m, 0) = 3.0 + vi.pair_of_triple(m);
    CHECK(advantage_features(phi, vi, opts).cwiseAbs().maxCoeff() <= 1e-13);
  }

  TEST_CASE("two options, one state: advantage equals Q_Omega minus V_Omega by hand") {
    OptionSet small;
    for (int w = 0; w < 2; ++w) {
      OptionSpec spec;
      auto pol = std::make_unique<BoltzmannTabularPolicy>(1, 2, 1.0);
      pol->set_params((Eigen::VectorXd(2) << 0.2 * (w + 1), -0.5).finished());
      spec.policy = std::move(pol);
      spec.termination = SigmoidTermination::tabular(1);
      small.options.push_back(std::move(spec));
    }
    small.policy_over_options = std::make_unique<TabularPolicyOverOptions>(
        (Eigen::MatrixXd(1, 2) << 0.3, 0.7).finished());
    VisitIndex vi;
    for (int w = 0; w < 2; ++w)
      for (int a = 0; a < 2; ++a) vi.add_triple(StatePoint::tabular(0), w, ActionPoint::tabular(a));
    vi.resize_weights();
    vi.mutable_mu().setOnes();
    vi.mutable_mu1().setOnes();
    Eigen::MatrixXd phi(4, 1);
    phi << 1.0, -0.5, 0.3, 0.8;
    auto pi_w = [&](int w, int a) {
      return small.options[w].policy->prob(StatePoint::tabular(0), ActionPoint::tabular(a));
    };
    const double q0 = pi_w(0, 0) * phi(0) + pi_w(0, 1) * phi(1);
    const double q1 = pi_w(1, 0) * phi(2) + pi_w(1, 1) * phi(3);
    const double v = 0.3 * q0 + 0.7 * q1;
    const Eigen::MatrixXd a = advantage_features(phi, vi, small);
    CHECK(a(0, 0) == doctest::Approx(q0 - v).epsilon(1e-14));
    CHECK(a(1, 0) == doctest::Approx(q1 - v).epsilon(1e-14));
  }

  TEST_CASE("beta limits reduce shaping to its two textbook forms") {
    testing::TabularOptionMdp mdp;
    OptionSet opts;
    testing::make_generic_instance(mdp, opts);
    const auto vi = testing::exact_visit_index(mdp, opts, 0, 0, 1);
    Rng rng(3);
    Eigen::MatrixXd phi(vi.n_triples(), 2);
    for (int i = 0; i < phi.size(); ++i) phi.data()[i] = rng.normal();
    const auto pi = build_pi_matrix(vi, opts);
    const Eigen::MatrixXd v_intra = pi * phi;
    const Eigen::MatrixXd adv = advantage_features(phi, vi, opts);

    for (double logit : {40.0, -40.0}) {
      OptionSet o2 = opts;
      for (auto& spec : o2.options)
        spec.termination.set_params(Eigen::VectorXd::Constant(4, logit));
      const Eigen::MatrixXd adv2 = advantage_features(phi, vi, o2);
      const Eigen::MatrixXd psi = shape_rewards(phi, adv2, vi, o2);
      for (int m = 0; m < vi.n_triples(); ++m) {
        const int l = vi.pair_of_triple(m);
        const double base = phi(m, 0) - v_intra(l, 0);
        const double expected = logit > 0 ? base + adv2(l, 0) : base;
        CHECK(psi(m, 0) == doctest::Approx(expected).epsilon(1e-9));
      }
    }
    (void)adv;
  }

  TEST_CASE("shaping the true Q_U reproduces the closed-form shaped reward (1e-10)") {
    testing::TabularOptionMdp mdp;
    OptionSet opts;
    testing::make_generic_instance(mdp, opts);
    const auto vi = testing::exact_visit_index(mdp, opts, 0, 0, 1);
    const Eigen::VectorXd q = true_q_vector(mdp, opts, vi);
    const Eigen::MatrixXd adv = advantage_features(q, vi, opts);
    const Eigen::VectorXd psi = shape_rewards(q, adv, vi, opts);
    const Eigen::VectorXd expected = oracle_shaped(mdp, opts, vi);
    CHECK((psi - expected).cwiseAbs().maxCoeff() <= 1e-10);
  }

  TEST_CASE("stationary instance: shaped true Q_U matches the oracle to 1e-10") {
    testing::TabularOptionMdp mdp;
    OptionSet opts;
    testing::make_stationary_instance(mdp, opts);
    const auto vi = testing::exact_visit_index(mdp, opts, 0, 0, 1);
    const Eigen::VectorXd q = true_q_vector(mdp, opts, vi);
    const Eigen::MatrixXd adv = advantage_features(q, vi, opts);
    const Eigen::VectorXd psi = shape_rewards(q, adv, vi, opts);
    const Eigen::VectorXd expected = oracle_shaped(mdp, opts, vi);
    CHECK((psi - expected).cwiseAbs().maxCoeff() <= 1e-10);
  }

  TEST_CASE("shaping preserves the greedy action set at every visited pair") {
    testing::TabularOptionMdp mdp;
    OptionSet opts;
    testing::make_generic_instance(mdp, opts);
    const auto vi = testing::exact_visit_index(mdp, opts, 0, 0, 1);
    const Eigen::VectorXd q = true_q_vector(mdp, opts, vi);
    const Eigen::MatrixXd adv = advantage_features(q, vi, opts);
    const Eigen::VectorXd psi = shape_rewards(q, adv, vi, opts);
    for (int l = 0; l < vi.n_pairs(); ++l) {
      const auto& triples = vi.triples_of_pair(l);
      int best_q = triples[0], best_psi = triples[0];
      for (int m : triples) {
        if (q[m] > q[best_q]) best_q = m;
        if (psi[m] > psi[best_psi]) best_psi = m;
      }
      CHECK(best_q == best_psi);
    }
  }
}
