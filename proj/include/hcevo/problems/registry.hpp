#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "hcevo/problems/problem.hpp"

namespace hcevo::problems {

class NotFound : public std::runtime_error {
 public:
  explicit NotFound(std::string_view name) : std::runtime_error("unknown problem: " + std::string(name)) {}
};

// Default-configured handle. Throws NotFound.
const Problem& registry_lookup(std::string_view name);
std::vector<std::string> registry_names();

// A handle with problem-specific options, e.g.
//   datacenter2015: {"pool_order": "placement" | "server_index"}
//   fishing_ahc039: {"cell_sizes": [2000], "max_vertices": 1000, "max_perimeter": 400000}
std::unique_ptr<Problem> make_problem(std::string_view name, const nlohmann::json& options);

}  // namespace hcevo::problems
