#include <doctest.h>

#include <cmath>

#include "optirl/policies.hpp"
#include "support/oracles.hpp"

using namespace optirl;

namespace {

RbfGrid small_grid() {
  return RbfGrid::uniform((Eigen::VectorXd(2) << -1, -3).finished(),
                          (Eigen::VectorXd(2) << 1, 3).finished(), {3, 3});
}

StatePoint vec2(double p, double v) {
  return StatePoint::vec((Eigen::VectorXd(2) << p, v).finished());
}

}  // namespace

TEST_SUITE("policies") {
  TEST_CASE("boltzmann: zero logits give the uniform distribution") {
    BoltzmannTabularPolicy pol(3, 4);
    for (int a = 0; a < 4; ++a)
      CHECK(pol.prob(StatePoint::tabular(1), ActionPoint::tabular(a)) ==
            doctest::Approx(0.25));
  }

  TEST_CASE("boltzmann: (ln 2, 0, 0, 0) row gives (0.4, 0.2, 0.2, 0.2)") {
    BoltzmannTabularPolicy pol(1, 4);
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(4);
    theta[0] = std::log(2.0);
    pol.set_params(theta);
    CHECK(pol.prob(StatePoint::tabular(0), ActionPoint::tabular(0)) == doctest::Approx(0.4));
    for (int a = 1; a < 4; ++a)
      CHECK(pol.prob(StatePoint::tabular(0), ActionPoint::tabular(a)) ==
            doctest::Approx(0.2));
  }

  TEST_CASE("boltzmann rows sum to one within 1e-12") {
    BoltzmannTabularPolicy pol(5, 4);
    Rng rng(3);
    Eigen::VectorXd theta(20);
    for (int i = 0; i < 20; ++i) theta[i] = rng.normal(0, 2);
    pol.set_params(theta);
    for (int s = 0; s < 5; ++s) {
      const Eigen::VectorXd p = pol.action_probs(s);
      CHECK(std::abs(p.sum() - 1.0) <= 1e-12);
      CHECK(p.minCoeff() >= 0.0);
      CHECK(p.maxCoeff() <= 1.0);
    }
  }

  TEST_CASE("boltzmann score at the uniform row: (0.75, -0.25, -0.25, -0.25)") {
    BoltzmannTabularPolicy pol(2, 4);
    const SegVec g = pol.log_grad(StatePoint::tabular(1), ActionPoint::tabular(0));
    CHECK(g.offset == 4);
    CHECK(g.v[0] == doctest::Approx(0.75));
    CHECK(g.v[1] == doctest::Approx(-0.25));
    CHECK(g.v[2] == doctest::Approx(-0.25));
    CHECK(g.v[3] == doctest::Approx(-0.25));
  }

  TEST_CASE("score expectation vanishes exactly for tabular families") {
    BoltzmannTabularPolicy pol(1, 4, 0.7);
    Eigen::VectorXd theta(4);
    theta << 0.4, -1.2, 0.3, 2.0;
    pol.set_params(theta);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(4);
    for (int a = 0; a < 4; ++a)
      acc += pol.prob(StatePoint::tabular(0), ActionPoint::tabular(a)) *
             pol.log_grad(StatePoint::tabular(0), ActionPoint::tabular(a)).v;
    CHECK(acc.cwiseAbs().maxCoeff() <= 1e-15);
  }

  TEST_CASE("boltzmann hessian at the uniform 2-action row") {
    BoltzmannTabularPolicy pol(1, 2);
    const SegMat h = pol.log_hessian(StatePoint::tabular(0), ActionPoint::tabular(1));
    CHECK(h.m(0, 0) == doctest::Approx(-0.25));
    CHECK(h.m(0, 1) == doctest::Approx(0.25));
    CHECK(h.m(1, 0) == doctest::Approx(0.25));
    CHECK(h.m(1, 1) == doctest::Approx(-0.25));
  }

  TEST_CASE("gaussian rbf: zero weights give the N(0, 0.01) density") {
    GaussianRbfPolicy pol(small_grid(), 0.01);
    const double d = pol.prob(vec2(0, 0), ActionPoint::scalar(0.0));
    CHECK(d == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI * 0.01)));
  }

  TEST_CASE("gaussian rbf: score is zero at the mean") {
    GaussianRbfPolicy pol(small_grid(), 0.01);
    Rng rng(5);
    Eigen::VectorXd theta(pol.param_dim());
    for (int i = 0; i < theta.size(); ++i) theta[i] = rng.normal();
    pol.set_params(theta);
    const StatePoint s = vec2(0.3, -1.0);
    const SegVec g = pol.log_grad(s, ActionPoint::scalar(pol.mean(s)));
    CHECK(g.v.cwiseAbs().maxCoeff() <= 1e-12);
  }

  TEST_CASE("gaussian rbf hessian with a single unit feature is -1/sigma2") {
    RbfGrid grid;
    grid.centers = Eigen::MatrixXd::Zero(1, 2);
    grid.delta = 1.0;
    GaussianRbfPolicy pol(grid, 0.01);
    const SegMat h = pol.log_hessian(vec2(0, 0), ActionPoint::scalar(0.5));
    REQUIRE(h.m.rows() == 1);
    CHECK(h.m(0, 0) == doctest::Approx(-100.0));
  }

  TEST_CASE("termination: zero params give beta = 0.5") {
    auto term = SigmoidTermination::tabular(6);
    CHECK(term.beta(StatePoint::tabular(3)) == doctest::Approx(0.5));
  }

  TEST_CASE("termination at logit ln 3: beta 0.75, grad 0.1875") {
    auto term = SigmoidTermination::tabular(2);
    Eigen::VectorXd vt(2);
    vt << 0.0, std::log(3.0);
    term.set_params(vt);
    CHECK(term.beta(StatePoint::tabular(1)) == doctest::Approx(0.75));
    const SegVec g = term.grad(StatePoint::tabular(1));
    CHECK(g.offset == 1);
    CHECK(g.v[0] == doctest::Approx(0.1875));
  }

  TEST_CASE("termination log-likelihood derivatives at vartheta = 0") {
    auto term = SigmoidTermination::tabular(1);
    {
      const auto [g, h] = term.log_grad_hessian(StatePoint::tabular(0), true);
      CHECK(g.v[0] == doctest::Approx(0.5));
      CHECK(h.m(0, 0) == doctest::Approx(-0.25));
    }
    {
      const auto [g, h] = term.log_grad_hessian(StatePoint::tabular(0), false);
      CHECK(g.v[0] == doctest::Approx(-0.5));
      CHECK(h.m(0, 0) == doctest::Approx(-0.25));
    }
  }

  TEST_CASE("termination saturation raises a named error") {
    auto term = SigmoidTermination::tabular(1);
    Eigen::VectorXd vt(1);
    vt << 800.0;  // sigmoid rounds to 1
    term.set_params(vt);
    CHECK_THROWS_AS(term.log_grad_hessian(StatePoint::tabular(0), true), NumericalError);
  }

  TEST_CASE("termination beta stays inside (0,1) for finite params") {
    auto term = SigmoidTermination::tabular(1);
    for (double v : {-30.0, -5.0, 0.0, 5.0, 30.0}) {
      term.set_params(Eigen::VectorXd::Constant(1, v));
      const double b = term.beta(StatePoint::tabular(0));
      CHECK(b > 0.0);
      CHECK(b < 1.0);
    }
  }

  TEST_CASE("finite differences confirm every analytic derivative (100 draws)") {
    Rng rng(11);
    const double h = 1e-5;
    const double tol = 1e-4;
    for (int draw = 0; draw < 100; ++draw) {
      if (draw % 2 == 0) {
        BoltzmannTabularPolicy pol(2, 3, 0.5 + rng.uniform());
        Eigen::VectorXd theta(6);
        for (int i = 0; i < 6; ++i) theta[i] = rng.normal(0, 1.5);
        pol.set_params(theta);
        const StatePoint s = StatePoint::tabular(static_cast<int>(rng.uniform_int(2)));
        const ActionPoint a = ActionPoint::tabular(static_cast<int>(rng.uniform_int(3)));
        auto f = [&](const Eigen::VectorXd& th) {
          BoltzmannTabularPolicy p2 = pol;
          p2.set_params(th);
          return std::log(p2.prob(s, a));
        };
        const Eigen::VectorXd fd = testing::fd_gradient(f, theta, h);
        const Eigen::VectorXd an = scatter(pol.log_grad(s, a), 6);
        CHECK((fd - an).cwiseAbs().maxCoeff() <= tol);
        const Eigen::MatrixXd fdh = testing::fd_hessian(f, theta, 1e-4);
        const Eigen::MatrixXd anh = scatter(pol.log_hessian(s, a), 6);
        CHECK((fdh - anh).cwiseAbs().maxCoeff() <= tol);
      } else {
        GaussianRbfPolicy pol(small_grid(), 0.01 + 0.05 * rng.uniform());
        Eigen::VectorXd theta(pol.param_dim());
        for (int i = 0; i < theta.size(); ++i) theta[i] = rng.normal(0, 0.5);
        pol.set_params(theta);
        const StatePoint s = vec2(rng.uniform(-1, 1), rng.uniform(-3, 3));
        const ActionPoint a = ActionPoint::scalar(rng.uniform(-4, 4));
        auto f = [&](const Eigen::VectorXd& th) {
          GaussianRbfPolicy p2 = pol;
          p2.set_params(th);
          return std::log(p2.prob(s, a));
        };
        const Eigen::VectorXd fd = testing::fd_gradient(f, theta, h);
        const Eigen::VectorXd an = scatter(pol.log_grad(s, a), pol.param_dim());
        CHECK((fd - an).cwiseAbs().maxCoeff() <= tol);
        const Eigen::MatrixXd fdh = testing::fd_hessian(f, theta, 1e-4);
        const Eigen::MatrixXd anh = scatter(pol.log_hessian(s, a), pol.param_dim());
        CHECK((fdh - anh).cwiseAbs().maxCoeff() <= tol);
      }
      // terminations against both label values
      auto term = SigmoidTermination::tabular(3);
      Eigen::VectorXd vt(3);
      for (int i = 0; i < 3; ++i) vt[i] = rng.normal(0, 1.5);
      term.set_params(vt);
      const StatePoint s = StatePoint::tabular(static_cast<int>(rng.uniform_int(3)));
      const bool b = rng.uniform() < 0.5;
      auto f = [&](const Eigen::VectorXd& v) {
        auto t2 = term;
        t2.set_params(v);
        const double beta = t2.beta(s);
        return std::log(b ? beta : 1.0 - beta);
      };
      const auto [g, hm] = term.log_grad_hessian(s, b);
      CHECK((testing::fd_gradient(f, vt, h) - scatter(g, 3)).cwiseAbs().maxCoeff() <= tol);
      CHECK((testing::fd_hessian(f, vt, 1e-4) - scatter(hm, 3)).cwiseAbs().maxCoeff() <= tol);
      // beta gradient, relative tolerance
      auto fb = [&](const Eigen::VectorXd& v) {
        auto t2 = term;
        t2.set_params(v);
        return t2.beta(s);
      };
      const Eigen::VectorXd fdb = testing::fd_gradient(fb, vt, 1e-6);
      const Eigen::VectorXd anb = scatter(term.grad(s), 3);
      CHECK((fdb - anb).cwiseAbs().maxCoeff() <= 1e-6 * std::max(1.0, anb.norm()));
    }
  }

  TEST_CASE("gaussian score expectation is near zero over Monte-Carlo draws") {
    GaussianRbfPolicy pol(small_grid(), 0.01);
    Eigen::VectorXd theta(pol.param_dim());
    Rng rng(21);
    for (int i = 0; i < theta.size(); ++i) theta[i] = rng.normal();
    pol.set_params(theta);
    const StatePoint s = vec2(0.2, 1.0);
    const int n = 100000;
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(pol.param_dim());
    for (int i = 0; i < n; ++i) acc += pol.log_grad(s, pol.sample(s, rng)).v;
    acc /= n;
    // per-component score std is |phi_k|/sigma; 3/sqrt(n) on the normalized scale
    const Eigen::VectorXd phi = pol.grid().features(s);
    for (int k = 0; k < acc.size(); ++k)
      CHECK(std::abs(acc[k]) <= 3.0 * (phi[k] / std::sqrt(0.01)) / std::sqrt(double(n)) + 1e-12);
  }
}
