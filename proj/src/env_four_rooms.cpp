#include "optirl/env_four_rooms.hpp"

namespace optirl {

namespace {

const char* kLayout[13] = {
    "wwwwwwwwwwwww",  //
    "w     w     w",  //
    "w     w     w",  //
    "w           w",  //
    "w     w     w",  //
    "w     w     w",  //
    "ww wwww     w",  //
    "w     www www",  //
    "w     w     w",  //
    "w     w     w",  //
    "w           w",  //
    "w     w     w",  //
    "wwwwwwwwwwwww",
};

const int kDr[4] = {-1, 1, 0, 0};
const int kDc[4] = {0, 0, -1, 1};

}  // namespace

FourRoomsEnv::FourRoomsEnv(double slip_prob, double gamma)
    : slip_(slip_prob), gamma_(gamma) {
  if (slip_ < 0.0 || slip_ > 1.0) throw ConfigError("FourRoomsEnv: slip_prob in [0,1]");
  if (gamma_ < 0.0 || gamma_ >= 1.0) throw ConfigError("FourRoomsEnv: gamma in [0,1)");
  for (int r = 0; r < 13; ++r)
    for (int c = 0; c < 13; ++c) {
      if (kLayout[r][c] == 'w') {
        id_[r][c] = -1;
      } else {
        id_[r][c] = static_cast<int>(cells_.size());
        cells_.emplace_back(r, c);
      }
    }
  for (int r = 1; r <= 5; ++r)
    for (int c = 1; c <= 5; ++c) upper_left_.push_back(id_[r][c]);
  for (int r = 8; r <= 11; ++r)
    for (int c = 7; c <= 11; ++c) lower_right_.push_back(id_[r][c]);
  goal_ = id_[11][11];  // bottom-right free cell
}

bool FourRoomsEnv::is_free(int row, int col) const {
  return row >= 0 && row < 13 && col >= 0 && col < 13 && id_[row][col] >= 0;
}

int FourRoomsEnv::cell_at(int row, int col) const {
  return is_free(row, col) ? id_[row][col] : -1;
}

std::pair<int, int> FourRoomsEnv::rowcol(int cell) const {
  if (cell < 0 || cell >= n_cells()) throw DataError("FourRoomsEnv: bad cell id");
  return cells_[cell];
}

void FourRoomsEnv::set_goal(int cell) {
  if (cell < 0 || cell >= n_cells()) throw ConfigError("FourRoomsEnv: goal must be a free cell");
  goal_ = cell;
}

int FourRoomsEnv::move(int cell, int dir) const {
  const auto [r, c] = rowcol(cell);
  const int nr = r + kDr[dir], nc = c + kDc[dir];
  return is_free(nr, nc) ? id_[nr][nc] : cell;
}

Eigen::VectorXd FourRoomsEnv::transition_row(int cell, int dir) const {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(n_cells());
  p[move(cell, dir)] += 1.0 - slip_;
  for (int d = 0; d < kActions; ++d) p[move(cell, d)] += slip_ / kActions;
  return p;
}

FourRoomsEnv FourRoomsEnv::with_transfer_goal(Rng& rng) const {
  FourRoomsEnv out = *this;
  out.goal_ = lower_right_[rng.uniform_int(lower_right_.size())];
  return out;
}

StatePoint FourRoomsEnv::initial_state(Rng& rng) const {
  return StatePoint::tabular(upper_left_[rng.uniform_int(upper_left_.size())]);
}

int FourRoomsEnv::step_cell(int cell, int dir, Rng& rng) const {
  int d = dir;
  if (rng.uniform() < slip_) d = static_cast<int>(rng.uniform_int(kActions));
  return move(cell, d);
}

StepResult FourRoomsEnv::step(const StatePoint& s, const ActionPoint& a, Rng& rng) const {
  if (!s.is_tabular() || s.id() >= n_cells()) throw DataError("FourRoomsEnv: bad state");
  if (!a.is_tabular() || a.id() < 0 || a.id() >= kActions)
    throw DataError("FourRoomsEnv: bad action");
  const int next = step_cell(s.id(), a.id(), rng);
  StepResult out;
  out.next = StatePoint::tabular(next);
  out.done = next == goal_;
  out.reward = out.done ? 0.0 : -1.0;
  return out;
}

}  // namespace optirl
