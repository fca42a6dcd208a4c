#include "optirl/evaluate.hpp"

#include <cmath>

#include "optirl/csv.hpp"

namespace optirl {

Evaluation evaluate_policy(const EnvSim& env,
                           const std::function<ActionPoint(const StatePoint&, Rng&)>& policy,
                           int n_episodes, std::uint64_t seed, int horizon) {
  if (n_episodes < 1) throw ConfigError("evaluate_policy: n_episodes >= 1");
  Rng base(seed);
  double sum = 0.0, sumsq = 0.0;
  for (int ep = 0; ep < n_episodes; ++ep) {
    Rng rng = base.derive(static_cast<std::uint64_t>(ep));
    StatePoint s = env.initial_state(rng);
    double ret = 0.0, disc = 1.0;
    for (int t = 0; t < horizon; ++t) {
      const StepResult res = env.step(s, policy(s, rng), rng);
      ret += disc * res.reward;
      disc *= env.gamma();
      s = res.next;
      if (res.done) break;
    }
    sum += ret;
    sumsq += ret * ret;
  }
  Evaluation out;
  out.episodes = n_episodes;
  out.mean = sum / n_episodes;
  if (n_episodes > 1) {
    const double var = std::max(0.0, (sumsq - sum * sum / n_episodes) / (n_episodes - 1));
    out.stderr_ = std::sqrt(var / n_episodes);
  }
  return out;
}

void write_curves(const std::string& path, const std::vector<CurvePoint>& points) {
  csv::Table t;
  t.header = {"run", "iteration_or_episode", "mean_return", "stderr"};
  for (const auto& p : points)
    t.rows.push_back({p.run, std::to_string(p.index), csv::format_double(p.mean),
                      csv::format_double(p.stderr_)});
  csv::write_file(path, t);
}

std::vector<CurvePoint> read_curves(const std::string& path) {
  csv::Table t = csv::read_file(path);
  const int c_run = t.column("run"), c_i = t.column("iteration_or_episode"),
            c_m = t.column("mean_return"), c_s = t.column("stderr");
  if (c_run < 0 || c_i < 0 || c_m < 0 || c_s < 0)
    throw DataError(path + ": not a curve file");
  std::vector<CurvePoint> out;
  for (size_t r = 0; r < t.rows.size(); ++r) {
    const std::string ctx = path + " row " + std::to_string(r + 2);
    out.push_back({t.rows[r][c_run],
                   static_cast<int>(csv::parse_long(t.rows[r][c_i], ctx)),
                   csv::parse_double(t.rows[r][c_m], ctx),
                   csv::parse_double(t.rows[r][c_s], ctx)});
  }
  return out;
}

std::vector<CurvePoint> aggregate_curves(const std::string& run,
                                         const std::vector<std::vector<double>>& reps) {
  if (reps.empty()) throw DataError("aggregate_curves: no repetitions");
  const size_t len = reps[0].size();
  for (const auto& r : reps)
    if (r.size() != len) throw DataError("aggregate_curves: ragged repetition curves");
  std::vector<CurvePoint> out;
  out.reserve(len);
  const int n = static_cast<int>(reps.size());
  for (size_t i = 0; i < len; ++i) {
    double sum = 0.0, sumsq = 0.0;
    for (const auto& r : reps) {
      sum += r[i];
      sumsq += r[i] * r[i];
    }
    CurvePoint p;
    p.run = run;
    p.index = static_cast<int>(i);
    p.mean = sum / n;
    if (n > 1) {
      const double var = std::max(0.0, (sumsq - sum * sum / n) / (n - 1));
      p.stderr_ = std::sqrt(var / n);
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace optirl
