#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hcevo/lang/interpreter.hpp"
#include "hcevo/problems/problem.hpp"
#include "hcevo/sandbox/run_control.hpp"

namespace hcevo::problems::traffic {

struct Street {
  std::string name;
  int length = 1;
  int start_id = 0;
  int end_id = 0;
};

struct Intersection {
  std::vector<int> roads_in;
  std::vector<int> roads_out;
};

struct TrafficInstance : Instance {
  int deadline = 0;
  int bonus = 0;
  std::vector<Intersection> intersections;
  std::vector<Street> streets;
  std::unordered_map<std::string, int> street_index;
  // Street ids per car.
  std::vector<std::vector<int>> routes;
};

struct Green {
  int street = 0;
  int duration = 1;
  friend bool operator==(const Green&, const Green&) = default;
};

struct Schedule : Solution {
  // Per intersection, in cycle order.
  std::vector<std::vector<Green>> lights;
  const TrafficInstance* instance = nullptr;  // for street names on export

  std::string export_text() const override;
};

struct SimResult {
  std::int64_t score = 0;
  std::vector<bool> finished;
};

TrafficInstance parse_traffic(std::string_view text);

std::span<const std::string_view> scorer_names();

// Streets on some car's route (final street excluded), counted per car,
// skipping cars whose free-flow travel time exceeds the deadline. Pairs are in
// first-seen order.
std::vector<std::pair<int, int>> used_streets(const TrafficInstance& in);

Schedule build_schedule(const TrafficInstance& in, const lang::BoundScorer& scorer,
                        sandbox::RunControl& control);
Schedule prune_failed_streets(const TrafficInstance& in, const Schedule& schedule,
                              sandbox::RunControl* control = nullptr);

// Throws InvalidSolution.
void validate(const TrafficInstance& in, const Schedule& schedule);
SimResult simulate(const TrafficInstance& in, const Schedule& schedule,
                   sandbox::RunControl* control = nullptr);
std::int64_t simulate_and_score(const TrafficInstance& in, const Schedule& schedule);

class TrafficProblem : public Problem {
 public:
  std::string_view name() const override { return "traffic2021"; }
  std::shared_ptr<const Instance> parse(std::string_view bytes) const override;
  std::unique_ptr<Solution> run_backbone(const Instance& instance,
                                         const lang::ScoringProgram& program,
                                         sandbox::RunControl& control) const override;
  std::int64_t evaluate(const Instance& instance, const Solution& solution) const override;
  std::string_view describe_backbone() const override;
  std::span<const std::string_view> bindings() const override { return scorer_names(); }
  std::string_view base_scorer() const override;
};

}  // namespace hcevo::problems::traffic
