#include "hcevo/problems/registry.hpp"

#include <map>

#include "hcevo/problems/datacenter2015.hpp"
#include "hcevo/problems/fishing_ahc039.hpp"
#include "hcevo/problems/rides2018.hpp"
#include "hcevo/problems/toy.hpp"
#include "hcevo/problems/traffic2021.hpp"

namespace hcevo::problems {

namespace {

const std::map<std::string, std::unique_ptr<Problem>, std::less<>>& handles() {
  static const auto table = [] {
    std::map<std::string, std::unique_ptr<Problem>, std::less<>> t;
    for (const char* name : {"datacenter2015", "rides2018", "traffic2021", "fishing_ahc039", "toy"}) {
      t.emplace(name, make_problem(name, nlohmann::json::object()));
    }
    return t;
  }();
  return table;
}

}  // namespace

const Problem& registry_lookup(std::string_view name) {
  const auto& t = handles();
  auto it = t.find(name);
  if (it == t.end()) throw NotFound(name);
  return *it->second;
}

std::vector<std::string> registry_names() {
  std::vector<std::string> out;
  for (const auto& [name, handle] : handles()) out.push_back(name);
  return out;
}

std::unique_ptr<Problem> make_problem(std::string_view name, const nlohmann::json& options) {
  const nlohmann::json opts = options.is_null() ? nlohmann::json::object() : options;
  if (name == "datacenter2015") {
    datacenter::Options o;
    const std::string order = opts.value("pool_order", "placement");
    if (order == "server_index") {
      o.pool_order = datacenter::PoolOrder::kServerIndex;
    } else if (order != "placement") {
      throw std::invalid_argument("pool_order must be 'placement' or 'server_index'");
    }
    return std::make_unique<datacenter::DataCenterProblem>(o);
  }
  if (name == "rides2018") return std::make_unique<rides::RidesProblem>();
  if (name == "traffic2021") return std::make_unique<traffic::TrafficProblem>();
  if (name == "fishing_ahc039") {
    fishing::Options o;
    if (opts.contains("cell_sizes")) o.cell_sizes = opts.at("cell_sizes").get<std::vector<std::int64_t>>();
    if (o.cell_sizes.empty()) throw std::invalid_argument("cell_sizes must not be empty");
    for (auto c : o.cell_sizes) {
      if (c < 1) throw std::invalid_argument("cell sizes must be positive");
    }
    o.limits.max_vertices = opts.value("max_vertices", o.limits.max_vertices);
    o.limits.max_perimeter = opts.value("max_perimeter", o.limits.max_perimeter);
    return std::make_unique<fishing::FishingProblem>(o);
  }
  if (name == "toy") return std::make_unique<toy::ToyProblem>();
  throw NotFound(name);
}

}  // namespace hcevo::problems
