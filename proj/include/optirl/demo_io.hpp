#ifndef OPTIRL_DEMO_IO_HPP
#define OPTIRL_DEMO_IO_HPP

#include <string>
#include <vector>

#include "optirl/mdp.hpp"

namespace optirl {

// Demonstration file format: UTF-8 CSV, header
//   episode,t,option,term_flag,s0[,s1,...],a0[,a1,...]
// one row per step, plus a trailing row per episode with t=-1 carrying the
// terminal state and empty option/term_flag/action cells. Floats use 17
// significant digits so files round-trip losslessly.
void write_demos(const std::string& path, const std::vector<Trajectory>& demos);

// The format does not carry domain typing, so the caller says whether
// state/action columns hold tabular indices or real vectors.
std::vector<Trajectory> read_demos(const std::string& path, bool tabular_states,
                                   bool tabular_actions);

}  // namespace optirl

#endif  // OPTIRL_DEMO_IO_HPP
