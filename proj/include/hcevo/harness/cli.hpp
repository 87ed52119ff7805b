#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hcevo::harness {

// Runs the command line `args` (without the program name). Results go to
// `out`; failures print {"error": {"type", "message"}} to `out` and return
// nonzero (2 for usage errors, 1 otherwise).
int run_cli(const std::vector<std::string>& args, std::ostream& out);

}  // namespace hcevo::harness
