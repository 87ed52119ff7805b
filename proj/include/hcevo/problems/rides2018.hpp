#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "hcevo/lang/interpreter.hpp"
#include "hcevo/problems/problem.hpp"
#include "hcevo/sandbox/run_control.hpp"

namespace hcevo::problems::rides {

struct Point {
  std::int64_t row = 0;
  std::int64_t col = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

inline std::int64_t distance(Point a, Point b) {
  return (a.row > b.row ? a.row - b.row : b.row - a.row) +
         (a.col > b.col ? a.col - b.col : b.col - a.col);
}

struct Ride {
  Point start;
  Point end;
  std::int64_t earliest_start = 0;
  std::int64_t latest_finish = 0;
  std::int64_t length() const { return distance(start, end); }
};

struct RidesInstance : Instance {
  std::int64_t grid_rows = 0;
  std::int64_t grid_cols = 0;
  std::int64_t fleet = 1;
  std::int64_t bonus = 0;
  std::int64_t total_time = 1;
  std::vector<Ride> rides;
};

// Rides handled by each car, in order, as indices into the input.
struct Schedule : Solution {
  std::vector<std::vector<int>> cars;
  // Score accrued by the backbone while building the schedule.
  std::int64_t backbone_score = 0;

  std::string export_text() const override;
};

RidesInstance parse_rides(std::string_view text);

std::span<const std::string_view> scorer_names();

Schedule run_greedy(const RidesInstance& in, const lang::BoundScorer& scorer,
                    sandbox::RunControl& control);

// Replays each car's rides independently. Throws InvalidSolution.
std::int64_t score_schedule(const RidesInstance& in, const Schedule& schedule);

class RidesProblem : public Problem {
 public:
  std::string_view name() const override { return "rides2018"; }
  std::shared_ptr<const Instance> parse(std::string_view bytes) const override;
  std::unique_ptr<Solution> run_backbone(const Instance& instance,
                                         const lang::ScoringProgram& program,
                                         sandbox::RunControl& control) const override;
  std::int64_t evaluate(const Instance& instance, const Solution& solution) const override;
  std::string_view describe_backbone() const override;
  std::span<const std::string_view> bindings() const override { return scorer_names(); }
  std::string_view base_scorer() const override;
};

}  // namespace hcevo::problems::rides
