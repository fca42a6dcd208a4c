#include "optirl/demo_io.hpp"

#include <fstream>

#include "optirl/common.hpp"
#include "optirl/csv.hpp"

namespace optirl {

namespace {

int state_width(const Trajectory& t) {
  const StatePoint& s = t.steps[0].state;
  return s.is_tabular() ? 1 : static_cast<int>(s.values().size());
}

int action_width(const Trajectory& t) {
  const ActionPoint& a = t.steps[0].action;
  return a.is_tabular() ? 1 : static_cast<int>(a.values().size());
}

void emit_state(std::vector<std::string>& row, const StatePoint& s) {
  if (s.is_tabular()) {
    row.push_back(std::to_string(s.id()));
  } else {
    for (Eigen::Index i = 0; i < s.values().size(); ++i)
      row.push_back(csv::format_double(s.values()[i]));
  }
}

}  // namespace

void write_demos(const std::string& path, const std::vector<Trajectory>& demos) {
  if (demos.empty()) throw DataError("write_demos: no trajectories");
  const int sw = state_width(demos[0]);
  const int aw = action_width(demos[0]);
  csv::Table t;
  t.header = {"episode", "t", "option", "term_flag"};
  for (int i = 0; i < sw; ++i) t.header.push_back("s" + std::to_string(i));
  for (int i = 0; i < aw; ++i) t.header.push_back("a" + std::to_string(i));
  for (const auto& traj : demos) {
    for (size_t k = 0; k < traj.steps.size(); ++k) {
      const Step& st = traj.steps[k];
      std::vector<std::string> row = {std::to_string(traj.episode_id),
                                      std::to_string(k), std::to_string(st.option),
                                      st.term_flag ? "1" : "0"};
      emit_state(row, st.state);
      if (st.action.is_tabular()) {
        row.push_back(std::to_string(st.action.id()));
      } else {
        for (Eigen::Index i = 0; i < st.action.values().size(); ++i)
          row.push_back(csv::format_double(st.action.values()[i]));
      }
      t.rows.push_back(std::move(row));
    }
    std::vector<std::string> term = {std::to_string(traj.episode_id), "-1", "", ""};
    emit_state(term, traj.terminal_state);
    for (int i = 0; i < aw; ++i) term.emplace_back();
    t.rows.push_back(std::move(term));
  }
  csv::write_file(path, t);
}

std::vector<Trajectory> read_demos(const std::string& path, bool tabular_states,
                                   bool tabular_actions) {
  csv::Table t = csv::read_file(path);
  const int c_ep = t.column("episode"), c_t = t.column("t"),
            c_opt = t.column("option"), c_tf = t.column("term_flag"),
            c_s0 = t.column("s0"), c_a0 = t.column("a0");
  if (c_ep < 0 || c_t < 0 || c_opt < 0 || c_tf < 0 || c_s0 < 0 || c_a0 < 0)
    throw DataError(path + ": demo header missing required columns");
  const int sw = c_a0 - c_s0;
  const int aw = static_cast<int>(t.header.size()) - c_a0;
  if (sw < 1 || aw < 1) throw DataError(path + ": bad state/action column layout");

  std::vector<Trajectory> out;
  Trajectory cur;
  bool open = false;
  long cur_ep = 0;
  for (size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::string ctx = path + " row " + std::to_string(r + 2);
    const long ep = csv::parse_long(row[c_ep], ctx);
    const long step_t = csv::parse_long(row[c_t], ctx);
    if (!open) {
      cur = Trajectory{};
      cur.episode_id = static_cast<int>(ep);
      cur_ep = ep;
      open = true;
    } else if (ep != cur_ep) {
      throw DataError(ctx + ": episode " + std::to_string(cur_ep) +
                      " ended without a terminal (t=-1) row");
    }
    StatePoint s;
    if (tabular_states) {
      s = StatePoint::tabular(static_cast<int>(csv::parse_long(row[c_s0], ctx)));
    } else {
      Eigen::VectorXd v(sw);
      for (int i = 0; i < sw; ++i) v[i] = csv::parse_double(row[c_s0 + i], ctx);
      s = StatePoint::vec(std::move(v));
    }
    if (step_t == -1) {
      cur.terminal_state = s;
      out.push_back(std::move(cur));
      open = false;
      continue;
    }
    if (step_t != static_cast<long>(cur.steps.size()))
      throw DataError(ctx + ": non-contiguous step index " + std::to_string(step_t));
    Step st;
    st.option = static_cast<int>(csv::parse_long(row[c_opt], ctx));
    st.term_flag = csv::parse_long(row[c_tf], ctx) != 0;
    st.state = std::move(s);
    if (tabular_actions) {
      st.action = ActionPoint::tabular(static_cast<int>(csv::parse_long(row[c_a0], ctx)));
    } else {
      Eigen::VectorXd v(aw);
      for (int i = 0; i < aw; ++i) v[i] = csv::parse_double(row[c_a0 + i], ctx);
      st.action = ActionPoint::vec(std::move(v));
    }
    cur.steps.push_back(std::move(st));
  }
  if (open) throw DataError(path + ": last episode missing terminal (t=-1) row");
  if (out.empty()) throw DataError(path + ": no episodes");
  return out;
}

}  // namespace optirl
