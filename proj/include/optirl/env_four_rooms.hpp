#ifndef OPTIRL_ENV_FOUR_ROOMS_HPP
#define OPTIRL_ENV_FOUR_ROOMS_HPP

#include <array>
#include <vector>

#include "optirl/env_sim.hpp"

namespace optirl {

// Classic 13x13 four-rooms grid: 104 free cells, four hallways. Actions move
// one cell up/down/left/right; with probability slip_prob the executed
// direction is drawn uniformly instead. Blocked moves stay in place. Default
// reward is -1 per step and 0 on reaching the goal, which ends the episode.
class FourRoomsEnv final : public EnvSim {
 public:
  static constexpr int kActions = 4;  // 0 up, 1 down, 2 left, 3 right

  explicit FourRoomsEnv(double slip_prob = 1.0 / 3.0, double gamma = 0.99);

  int n_cells() const { return static_cast<int>(cells_.size()); }
  int goal_cell() const { return goal_; }
  void set_goal(int cell);
  double slip_prob() const { return slip_; }

  bool is_free(int row, int col) const;
  int cell_at(int row, int col) const;                 // -1 if wall
  std::pair<int, int> rowcol(int cell) const;

  const std::vector<int>& upper_left_room() const { return upper_left_; }
  const std::vector<int>& lower_right_room() const { return lower_right_; }

  // deterministic move in a given direction ignoring slip
  int move(int cell, int dir) const;
  // exact next-cell distribution over free cells for (s, a)
  Eigen::VectorXd transition_row(int cell, int dir) const;

  // copy with the goal drawn uniformly from the lower-right room
  FourRoomsEnv with_transfer_goal(Rng& rng) const;

  // EnvSim: initial state uniform over the upper-left room
  StatePoint initial_state(Rng& rng) const override;
  StepResult step(const StatePoint& s, const ActionPoint& a, Rng& rng) const override;
  double gamma() const override { return gamma_; }
  std::unique_ptr<EnvSim> clone() const override {
    return std::make_unique<FourRoomsEnv>(*this);
  }

 private:
  int step_cell(int cell, int dir, Rng& rng) const;
  double slip_;
  double gamma_;
  int goal_;
  std::array<std::array<int, 13>, 13> id_;  // -1 for walls
  std::vector<std::pair<int, int>> cells_;
  std::vector<int> upper_left_;
  std::vector<int> lower_right_;
};

}  // namespace optirl

#endif  // OPTIRL_ENV_FOUR_ROOMS_HPP
