#ifndef OPTIRL_EXPERIMENTS_HPP
#define OPTIRL_EXPERIMENTS_HPP

#include <map>

#include "optirl/config.hpp"
#include "optirl/expert_car.hpp"
#include "optirl/expert_fit.hpp"
#include "optirl/expert_four_rooms.hpp"
#include "optirl/fqi.hpp"
#include "optirl/knn_reward.hpp"
#include "optirl/recover.hpp"
#include "optirl/reward_combine.hpp"
#include "optirl/sarsa.hpp"

namespace optirl {

FourRoomsEnv fourrooms_env_from_config(const Config& cfg);
CarOnHillEnv car_env_from_config(const Config& cfg);
RecoverConfig recover_config(const Config& cfg, double gamma);

struct FourRoomsPipeline {
  FourRoomsEnv env;
  OptionSet expert;
  std::vector<Trajectory> demos;
};

// Train the option-critic expert and sample demonstrations from it.
FourRoomsPipeline fourrooms_expert_pipeline(const Config& cfg);

struct FourRoomsRecovery {
  RecoverResult result;
  Eigen::MatrixXd merged_raw;  // pi_Omega-weighted option rewards
  Eigen::MatrixXd merged;      // after the configured normalization
};

FourRoomsRecovery fourrooms_recover_pipeline(const FourRoomsEnv& env,
                                             const OptionSet& expert,
                                             const std::vector<Trajectory>& demos,
                                             const Config& cfg);

SarsaConfig sarsa_config(const Config& cfg);

// Repetition curves (per-episode default-reward returns) for SARSA under the
// given learning reward; repetition r runs on seed_base + r. Results are
// identical for any jobs count.
std::vector<std::vector<double>> sarsa_reps(const FourRoomsEnv& env,
                                            const LearnerReward& reward,
                                            const SarsaConfig& base, int repetitions,
                                            std::uint64_t seed_base, int jobs = 1);

// Transfer runs: per alpha, per repetition curves. Every alpha sees the same
// per-repetition transfer goal and seed.
std::map<double, std::vector<std::vector<double>>> fourrooms_transfer_reps(
    const FourRoomsEnv& env, const Eigen::MatrixXd& merged_reward,
    const std::vector<double>& alphas, const Config& cfg);

struct CarPipeline {
  CarOnHillEnv env;
  CarSubgoals goals;
  std::vector<double> actions;
  GridPolicy pol1;
  GridPolicy pol2;
  double epsilon = 0.0;
  std::vector<Trajectory> demos;
  OptionSet fitted;
  FitConfig fit;
};

// FQI sub-option experts, epsilon-noised demonstrations, and the fitted
// Gaussian-RBF/sigmoid parametrization the IRL consumes.
CarPipeline car_expert_pipeline(const Config& cfg, double epsilon);

struct CarRecovery {
  RecoverResult result;
  std::vector<KnnRewardModel> per_option;
  FlatReward merged;
};

CarRecovery car_recover_pipeline(const CarPipeline& pipe, const Config& cfg);

FqiConfig fqi_config(const Config& cfg);

// Rollout of a deterministic flat policy from the canonical start.
std::vector<Eigen::Vector2d> car_position_trace(
    const CarOnHillEnv& env, const std::function<ActionPoint(const StatePoint&, Rng&)>& policy,
    int steps);

}  // namespace optirl

#endif  // OPTIRL_EXPERIMENTS_HPP
