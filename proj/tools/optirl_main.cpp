// Command-line front end: expert demo generation, reward recovery,
// evaluation and transfer runs, the MaxEnt baseline, and report aggregation.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "optirl/csv.hpp"
#include "optirl/demo_io.hpp"
#include "optirl/evaluate.hpp"
#include "optirl/experiments.hpp"
#include "optirl/maxent.hpp"
#include "optirl/option_io.hpp"
#include "optirl/parallel.hpp"

namespace fs = std::filesystem;
using namespace optirl;

namespace {

Config load_config(const std::string& path, const std::vector<std::string>& overrides) {
  Config cfg = Config::from_file(path);
  for (const auto& o : overrides) cfg.set_override(o);
  return cfg;
}

std::string domain_of(const Config& cfg) {
  const std::string d = cfg.require_string("domain");
  if (d != "fourrooms" && d != "car")
    throw ConfigError("domain must be 'fourrooms' or 'car'");
  return d;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory " + dir);
}

int cmd_expert(const Config& cfg, const std::string& out_dir) {
  ensure_dir(out_dir);
  const std::string domain = domain_of(cfg);
  if (domain == "fourrooms") {
    const FourRoomsPipeline pipe = fourrooms_expert_pipeline(cfg);
    write_demos(out_dir + "/demos.csv", pipe.demos);
    save_option_set(out_dir + "/expert_", pipe.expert);
  } else {
    const double eps = cfg.get_double("expert.epsilon", 0.0);
    const CarPipeline pipe = car_expert_pipeline(cfg, eps);
    write_demos(out_dir + "/demos.csv", pipe.demos);
    save_option_set(out_dir + "/expert_", pipe.fitted);
  }
  write_manifest(out_dir + "/manifest.json", cfg, {{"command", "expert"}});
  std::cout << "expert artifacts written to " << out_dir << "\n";
  return 0;
}

int cmd_recover(const Config& cfg, const std::string& demos_path,
                const std::string& params_prefix, const std::string& out_dir) {
  ensure_dir(out_dir);
  const std::string domain = domain_of(cfg);
  const bool tabular = domain == "fourrooms";
  const auto demos = read_demos(demos_path, tabular, tabular);
  const OptionSet opts = load_option_set(params_prefix);

  if (tabular) {
    const FourRoomsEnv env = fourrooms_env_from_config(cfg);
    const FourRoomsRecovery rec = fourrooms_recover_pipeline(env, opts, demos, cfg);
    write_features_csv(out_dir + "/features.csv", rec.result);
    write_hessian_report_csv(out_dir + "/hessian_report.csv", rec.result.report);
    write_reward_csv(out_dir + "/reward.csv", rec.result.vi, rec.result.values);
    write_table_csv(out_dir + "/merged_reward.csv", rec.merged);
    std::cout << "p=" << rec.result.nullspace.null_dim
              << " kept=" << rec.result.report.n_kept()
              << " residual=" << nullspace_residual(rec.result) << "\n";
  } else {
    CarPipeline pipe;
    pipe.env = car_env_from_config(cfg);
    pipe.goals.p_min = cfg.get_double("expert.subgoal_p", -0.05);
    pipe.goals.v_min = cfg.get_double("expert.subgoal_v", 1.8);
    pipe.demos = demos;
    pipe.fitted = opts;
    const CarRecovery rec = car_recover_pipeline(pipe, cfg);
    write_features_csv(out_dir + "/features.csv", rec.result);
    write_hessian_report_csv(out_dir + "/hessian_report.csv", rec.result.report);
    write_reward_csv(out_dir + "/reward.csv", rec.result.vi, rec.result.values);
    for (size_t w = 0; w < rec.per_option.size(); ++w)
      rec.per_option[w].save(out_dir + "/knn_option" + std::to_string(w) + ".csv");
    std::cout << "p=" << rec.result.nullspace.null_dim
              << " kept=" << rec.result.report.n_kept()
              << " residual=" << nullspace_residual(rec.result) << "\n";
  }
  write_manifest(out_dir + "/manifest.json", cfg,
                 {{"command", "recover"}, {"demos", demos_path}, {"params", params_prefix}});
  return 0;
}

LearnerReward fourrooms_reward_arm(const FourRoomsEnv& env, const std::string& reward_arg) {
  if (reward_arg == "default") return default_reward(env);
  const Eigen::MatrixXd table = read_table_csv(reward_arg);
  auto t = std::make_shared<Eigen::MatrixXd>(table);
  return [t](const StatePoint& s, const ActionPoint& a, const StatePoint&) {
    return (*t)(s.id(), a.id());
  };
}

int cmd_evaluate(const Config& cfg, const std::string& reward_arg,
                 const std::string& out_path, int jobs) {
  const std::string domain = domain_of(cfg);
  if (domain == "fourrooms") {
    const FourRoomsEnv env = fourrooms_env_from_config(cfg);
    const int reps = cfg.get_int("learner.repetitions", 20);
    const auto curves = sarsa_reps(env, fourrooms_reward_arm(env, reward_arg),
                                   sarsa_config(cfg), reps, cfg.get_seed("seed", 1), jobs);
    write_curves(out_path, aggregate_curves(reward_arg == "default" ? "default" : "recovered",
                                            curves));
  } else {
    const CarOnHillEnv env = car_env_from_config(cfg);
    const int reps = cfg.get_int("learner.repetitions", 10);
    const auto transitions =
        collect_transitions(env, cfg.get_int("learner.n_transitions", 10000),
                            cfg.get_int("car.horizon", 300), cfg.get_seed("seed", 7) + 99);
    TransitionReward arm;
    std::string label;
    if (reward_arg == "default") {
      arm = [](const CarTransition& tr) {
        return CarOnHillEnv::reward_at(tr.s2[0], tr.s2[1]);
      };
      label = "default";
    } else {
      auto model = std::make_shared<KnnRewardModel>(KnnRewardModel::load(reward_arg));
      arm = [model](const CarTransition& tr) {
        return model->query(StatePoint::vec(tr.s), ActionPoint::scalar(tr.a));
      };
      label = "recovered";
    }
    std::vector<std::vector<double>> curves(reps);
    parallel_for(reps, jobs, [&](int r) {
      FqiConfig fc = fqi_config(cfg);
      fc.seed += 131 * static_cast<std::uint64_t>(r);
      curves[r] = fqi_train(env, transitions, arm, fc).curve;
    });
    write_curves(out_path, aggregate_curves(label, curves));
  }
  std::cout << "curves written to " << out_path << "\n";
  return 0;
}

int cmd_transfer(const Config& cfg, const std::string& reward_path,
                 const std::string& alphas_arg, const std::string& out_dir) {
  ensure_dir(out_dir);
  const FourRoomsEnv env = fourrooms_env_from_config(cfg);
  const Eigen::MatrixXd merged = read_table_csv(reward_path);
  std::vector<double> alphas;
  for (const auto& tok : csv::split_line(alphas_arg))
    alphas.push_back(csv::parse_double(tok, "--alphas"));
  const auto by_alpha = fourrooms_transfer_reps(env, merged, alphas, cfg);
  for (const auto& [alpha, curves] : by_alpha) {
    std::string name = csv::format_double(alpha);
    write_curves(out_dir + "/transfer_alpha_" + name + ".csv",
                 aggregate_curves("alpha=" + name, curves));
  }
  write_manifest(out_dir + "/manifest.json", cfg,
                 {{"command", "transfer"}, {"reward", reward_path}});
  std::cout << by_alpha.size() << " transfer curve files written to " << out_dir << "\n";
  return 0;
}

int cmd_baseline(const Config& cfg, const std::string& demos_path,
                 const std::string& out_path) {
  if (domain_of(cfg) != "fourrooms")
    throw ConfigError("baseline: only the fourrooms domain is supported");
  const FourRoomsEnv env = fourrooms_env_from_config(cfg);
  const auto demos = read_demos(demos_path, true, true);
  std::vector<Eigen::MatrixXd> transition;
  for (int a = 0; a < FourRoomsEnv::kActions; ++a) {
    Eigen::MatrixXd pa(env.n_cells(), env.n_cells());
    for (int s = 0; s < env.n_cells(); ++s)
      pa.row(s) = env.transition_row(s, a).transpose();
    transition.push_back(std::move(pa));
  }
  MaxEntConfig mc;
  mc.lr = cfg.get_double("baseline.lr", 0.05);
  mc.iterations = cfg.get_int("baseline.iterations", 300);
  mc.horizon = cfg.get_int("baseline.horizon", 400);
  const MaxEntResult res = maxent_irl(demos, transition, {env.goal_cell()}, mc);
  csv::Table t;
  t.header = {"state", "reward"};
  for (int s = 0; s < env.n_cells(); ++s)
    t.rows.push_back({std::to_string(s), csv::format_double(res.reward[s])});
  csv::write_file(out_path, t);
  std::cout << "maxent reward written to " << out_path
            << " (final grad norm " << res.grad_norm << ")\n";
  return 0;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& out_path) {
  if (inputs.empty()) throw DataError("report: no input curve files");
  std::vector<std::vector<CurvePoint>> all;
  for (const auto& path : inputs) all.push_back(read_curves(path));
  csv::Table t;
  t.header = {"iteration_or_episode"};
  for (const auto& curves : all) {
    const std::string run = curves.empty() ? "?" : curves[0].run;
    t.header.push_back(run + "_mean");
    t.header.push_back(run + "_stderr");
  }
  size_t longest = 0;
  for (const auto& c : all) longest = std::max(longest, c.size());
  for (size_t i = 0; i < longest; ++i) {
    std::vector<std::string> row = {std::to_string(i)};
    for (const auto& c : all) {
      if (i < c.size()) {
        row.push_back(csv::format_double(c[i].mean));
        row.push_back(csv::format_double(c[i].stderr_));
      } else {
        row.emplace_back();
        row.emplace_back();
      }
    }
    t.rows.push_back(std::move(row));
  }
  csv::write_file(out_path, t);
  std::cout << "report written to " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"option-level inverse reinforcement learning toolkit"};
  app.require_subcommand(1);

  std::string config_path, out = "out", demos_path, params_prefix = "out/expert_";
  std::string reward_arg = "default", alphas = "0,0.8,1.0";
  std::vector<std::string> overrides, report_inputs;
  int jobs = 1;

  auto add_common = [&](CLI::App* sub, bool needs_config = true) {
    if (needs_config)
      sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--set", overrides, "override config keys (key=value)");
  };

  CLI::App* s_expert = app.add_subcommand("expert", "train the expert and write demos");
  add_common(s_expert);
  s_expert->add_option("--out", out, "output directory");

  CLI::App* s_recover = app.add_subcommand("recover", "recover rewards from demos");
  add_common(s_recover);
  s_recover->add_option("--demos", demos_path, "demonstration CSV")->required();
  s_recover->add_option("--params", params_prefix, "option parameter file prefix");
  s_recover->add_option("--out", out, "output directory");

  CLI::App* s_eval = app.add_subcommand("evaluate", "learner curves under a reward");
  add_common(s_eval);
  s_eval->add_option("--reward", reward_arg, "'default' or a recovered reward file");
  s_eval->add_option("--out", out, "output curve CSV");
  s_eval->add_option("--jobs", jobs, "worker threads");

  CLI::App* s_transfer = app.add_subcommand("transfer", "transfer-task curves per alpha");
  add_common(s_transfer);
  s_transfer->add_option("--reward", reward_arg, "merged recovered reward table")->required();
  s_transfer->add_option("--alphas", alphas, "comma-separated blend weights");
  s_transfer->add_option("--out", out, "output directory");

  CLI::App* s_baseline = app.add_subcommand("baseline", "maximum-entropy IRL baseline");
  add_common(s_baseline);
  s_baseline->add_option("--demos", demos_path, "demonstration CSV")->required();
  s_baseline->add_option("--out", out, "output reward CSV");

  CLI::App* s_report = app.add_subcommand("report", "aggregate curve CSVs");
  s_report->add_option("--out", out, "output CSV");
  s_report->add_option("inputs", report_inputs, "curve CSV files");

  CLI11_PARSE(app, argc, argv);

  try {
    if (s_expert->parsed()) return cmd_expert(load_config(config_path, overrides), out);
    if (s_recover->parsed())
      return cmd_recover(load_config(config_path, overrides), demos_path, params_prefix, out);
    if (s_eval->parsed())
      return cmd_evaluate(load_config(config_path, overrides), reward_arg, out, jobs);
    if (s_transfer->parsed())
      return cmd_transfer(load_config(config_path, overrides), reward_arg, alphas, out);
    if (s_baseline->parsed())
      return cmd_baseline(load_config(config_path, overrides), demos_path, out);
    if (s_report->parsed()) return cmd_report(report_inputs, out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
