#include "optirl/expert_four_rooms.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace optirl {

namespace {

Eigen::VectorXd softmax(const Eigen::VectorXd& z) {
  Eigen::VectorXd p = (z.array() - z.maxCoeff()).exp();
  return p / p.sum();
}

int sample_categorical(const Eigen::VectorXd& p, Rng& rng) {
  double u = rng.uniform();
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    u -= p[i];
    if (u <= 0) return static_cast<int>(i);
  }
  return static_cast<int>(p.size()) - 1;
}

int argmax_row(const Eigen::VectorXd& v) {
  Eigen::Index best = 0;
  v.maxCoeff(&best);
  return static_cast<int>(best);
}

struct Tables {
  int n_states, n_actions, n_options;
  std::vector<Eigen::MatrixXd> theta;     // per option, S x A
  Eigen::MatrixXd vartheta;               // S x Omega
  Eigen::MatrixXd q_omega;                // S x Omega
  std::vector<Eigen::MatrixXd> q_u;       // per option, S x A
  double temp_theta;

  Eigen::VectorXd intra_probs(int w, int s) const {
    return softmax(theta[w].row(s).transpose() / temp_theta);
  }
  double beta(int w, int s) const { return 1.0 / (1.0 + std::exp(-vartheta(s, w))); }
};

double greedy_return(const FourRoomsEnv& env, const Tables& tb, int episodes, int horizon,
                     Rng& rng) {
  double total = 0.0;
  for (int ep = 0; ep < episodes; ++ep) {
    StatePoint s = env.initial_state(rng);
    int w = argmax_row(tb.q_omega.row(s.id()).transpose());
    double ret = 0.0, disc = 1.0;
    for (int t = 0; t < horizon; ++t) {
      const int a = argmax_row(tb.theta[w].row(s.id()).transpose());
      const StepResult res = env.step(s, ActionPoint::tabular(a), rng);
      ret += disc * res.reward;
      disc *= env.gamma();
      s = res.next;
      if (res.done) break;
      if (tb.beta(w, s.id()) >= 0.5) w = argmax_row(tb.q_omega.row(s.id()).transpose());
    }
    total += ret;
  }
  return total / episodes;
}

}  // namespace

OptionSet option_critic_train(const FourRoomsEnv& env, const OptionCriticConfig& cfg) {
  const int n_s = env.n_cells();
  const int n_a = FourRoomsEnv::kActions;
  const int n_w = cfg.n_options;
  Tables tb;
  tb.n_states = n_s;
  tb.n_actions = n_a;
  tb.n_options = n_w;
  tb.temp_theta = cfg.temp_theta;
  tb.theta.assign(n_w, Eigen::MatrixXd::Zero(n_s, n_a));
  tb.vartheta = Eigen::MatrixXd::Zero(n_s, n_w);
  tb.q_omega = Eigen::MatrixXd::Zero(n_s, n_w);
  tb.q_u.assign(n_w, Eigen::MatrixXd::Zero(n_s, n_a));

  Rng rng(cfg.seed);
  std::vector<double> curve;
  const double gamma = env.gamma();
  double temp_omega = cfg.temp_omega_start;
  bool converged = false;
  int episodes_run = 0;

  for (int ep = 0; ep < cfg.max_episodes && !converged; ++ep) {
    episodes_run = ep + 1;
    const double frac = cfg.max_episodes > 1 ? double(ep) / (cfg.max_episodes - 1) : 1.0;
    temp_omega = cfg.temp_omega_start *
                 std::pow(cfg.temp_omega_end / cfg.temp_omega_start, frac);
    StatePoint s = env.initial_state(rng);
    int w = sample_categorical(softmax(tb.q_omega.row(s.id()).transpose() / temp_omega), rng);
    double ep_return = 0.0, disc = 1.0;
    for (int t = 0; t < cfg.horizon; ++t) {
      const Eigen::VectorXd pi = tb.intra_probs(w, s.id());
      const int a = sample_categorical(pi, rng);
      const StepResult res = env.step(s, ActionPoint::tabular(a), rng);
      ep_return += disc * res.reward;
      disc *= gamma;
      const int s2 = res.next.id();

      const Eigen::VectorXd pi_omega2 = softmax(tb.q_omega.row(s2).transpose() / temp_omega);
      const double v_omega2 = pi_omega2.dot(tb.q_omega.row(s2).transpose());
      const double b2 = tb.beta(w, s2);
      const double u2 = res.done ? 0.0 : (1.0 - b2) * tb.q_omega(s2, w) + b2 * v_omega2;
      const double target = res.reward + gamma * u2;

      tb.q_u[w](s.id(), a) += cfg.lr_critic * (target - tb.q_u[w](s.id(), a));
      tb.q_omega(s.id(), w) += cfg.lr_critic * (target - tb.q_omega(s.id(), w));

      // intra-option policy gradient with Q_Omega baseline
      const double adv = tb.q_u[w](s.id(), a) - tb.q_omega(s.id(), w);
      Eigen::VectorXd grad = -pi / cfg.temp_theta;
      grad[a] += 1.0 / cfg.temp_theta;
      tb.theta[w].row(s.id()) += cfg.lr_theta * adv * grad.transpose();

      if (res.done) break;
      // termination gradient at the arrival state
      const double adv_omega = tb.q_omega(s2, w) - v_omega2 + cfg.deliberation_cost;
      tb.vartheta(s2, w) -= cfg.lr_vartheta * adv_omega * b2 * (1.0 - b2);

      s = res.next;
      if (rng.uniform() < tb.beta(w, s.id()))
        w = sample_categorical(softmax(tb.q_omega.row(s.id()).transpose() / temp_omega), rng);
    }
    if ((ep + 1) % cfg.check_every == 0) {
      Rng eval_rng = rng.derive(0xe7a1u + ep);
      const double g =
          greedy_return(env, tb, cfg.check_episodes, cfg.horizon, eval_rng);
      curve.push_back(g);
      if (g >= cfg.goal_return_threshold) converged = true;
    }
  }

  if (!converged) {
    std::ostringstream os;
    os << "option_critic_train: no convergence after " << episodes_run
       << " episodes; greedy return curve:";
    for (double g : curve) os << ' ' << g;
    throw NumericalError(os.str());
  }

  OptionSet out;
  for (int w = 0; w < n_w; ++w) {
    OptionSpec spec;
    auto pol = std::make_unique<BoltzmannTabularPolicy>(n_s, n_a, cfg.temp_theta);
    Eigen::VectorXd flat(n_s * n_a);
    for (int s = 0; s < n_s; ++s)
      for (int a = 0; a < n_a; ++a) flat[s * n_a + a] = tb.theta[w](s, a);
    pol->set_params(flat);
    spec.policy = std::move(pol);
    spec.termination = SigmoidTermination::tabular(n_s);
    spec.termination.set_params(tb.vartheta.col(w));
    out.options.push_back(std::move(spec));
  }
  Eigen::MatrixXd pi_omega(n_s, n_w);
  for (int s = 0; s < n_s; ++s)
    pi_omega.row(s) = softmax(tb.q_omega.row(s).transpose() / temp_omega).transpose();
  out.policy_over_options = std::make_unique<TabularPolicyOverOptions>(pi_omega);
  return out;
}

double greedy_option_return(const FourRoomsEnv& env, const OptionSet& opts, int episodes,
                            int horizon, std::uint64_t seed) {
  Rng rng(seed);
  double total = 0.0;
  for (int ep = 0; ep < episodes; ++ep) {
    StatePoint s = env.initial_state(rng);
    auto pick_option = [&](const StatePoint& st) {
      return argmax_row(opts.policy_over_options->probs(st));
    };
    auto pick_action = [&](int w, const StatePoint& st) {
      const auto* pol = dynamic_cast<const BoltzmannTabularPolicy*>(opts.options[w].policy.get());
      return argmax_row(pol->action_probs(st.id()));
    };
    int w = pick_option(s);
    double ret = 0.0, disc = 1.0;
    for (int t = 0; t < horizon; ++t) {
      const StepResult res = env.step(s, ActionPoint::tabular(pick_action(w, s)), rng);
      ret += disc * res.reward;
      disc *= env.gamma();
      s = res.next;
      if (res.done) break;
      if (opts.options[w].termination.beta(s) >= 0.5) w = pick_option(s);
    }
    total += ret;
  }
  return total / episodes;
}

}  // namespace optirl
