#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "hcevo/lang/interpreter.hpp"
#include "hcevo/problems/problem.hpp"
#include "hcevo/sandbox/run_control.hpp"

namespace hcevo::problems::datacenter {

struct Server {
  int index = 0;
  int size = 1;
  int capacity = 1;
};

struct DataCenterInstance : Instance {
  int n_rows = 0;
  int n_slots = 0;
  int n_pools = 0;
  // Per row: sorted blocked slots, then n_slots as a sentinel.
  std::vector<std::vector<int>> row_blocks;
  std::vector<Server> servers;
};

struct Location {
  int row = -1;
  int slot = -1;
  int pool = -1;
  bool placed() const { return row >= 0; }
};

struct Placement : Solution {
  std::vector<Location> servers;
  // Server ids in the order phase one placed them.
  std::vector<int> order;

  std::string export_text() const override;
};

// Phase-two iteration order. The placement order is what the greedy loop
// naturally yields; ascending index is the alternative knob.
enum class PoolOrder { kPlacement, kServerIndex };

struct Options {
  PoolOrder pool_order = PoolOrder::kPlacement;
};

DataCenterInstance parse_datacenter(std::string_view text);

// Scorer parameter names, in binding order.
std::span<const std::string_view> scorer_names();

Placement place_servers(const DataCenterInstance& in, const lang::BoundScorer& scorer,
                        sandbox::RunControl& control);
void assign_pools(const DataCenterInstance& in, Placement& placement,
                  const lang::BoundScorer& scorer, sandbox::RunControl& control,
                  PoolOrder order);

// Throws InvalidSolution naming the first offending server.
void validate(const DataCenterInstance& in, const Placement& placement);
std::int64_t guaranteed_capacity(const DataCenterInstance& in, const Placement& placement);

class DataCenterProblem : public Problem {
 public:
  explicit DataCenterProblem(Options options = {}) : options_(options) {}

  std::string_view name() const override { return "datacenter2015"; }
  std::shared_ptr<const Instance> parse(std::string_view bytes) const override;
  std::unique_ptr<Solution> run_backbone(const Instance& instance,
                                         const lang::ScoringProgram& program,
                                         sandbox::RunControl& control) const override;
  std::int64_t evaluate(const Instance& instance, const Solution& solution) const override;
  std::string_view describe_backbone() const override;
  std::span<const std::string_view> bindings() const override { return scorer_names(); }
  std::string_view base_scorer() const override;

 private:
  Options options_;
};

}  // namespace hcevo::problems::datacenter
