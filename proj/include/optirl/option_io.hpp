#ifndef OPTIRL_OPTION_IO_HPP
#define OPTIRL_OPTION_IO_HPP

#include <string>

#include "optirl/expert_car.hpp"
#include "optirl/option_set.hpp"

namespace optirl {

// Parameter files: one CSV per option policy and termination plus one for
// the policy-over-options, each with a one-line header naming family,
// dimensions, and hyperparameters. `prefix` is a path prefix, e.g.
// "out/expert_".
void save_option_set(const std::string& prefix, const OptionSet& opts);
OptionSet load_option_set(const std::string& prefix);

}  // namespace optirl

#endif  // OPTIRL_OPTION_IO_HPP
