#pragma once

#include <string>
#include <string_view>

#include "hcevo/rng.hpp"

namespace hcevo::problems {

// A small valid instance in the problem's input format, for fuzzing and
// fast evolution runs. Throws NotFound for an unknown problem.
std::string synthetic_instance(std::string_view problem, Rng& rng);

}  // namespace hcevo::problems
