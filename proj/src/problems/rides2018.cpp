#include "hcevo/problems/rides2018.hpp"

#include <array>
#include <queue>
#include <sstream>
#include <tuple>

#include "hcevo/problems/line_reader.hpp"

namespace hcevo::problems::rides {

namespace {

using lang::Value;

constexpr std::array<std::string_view, 3> kNames = {"coords", "time", "rides"};

Value point_value(Point p) { return Value::tuple({Value::integer(p.row), Value::integer(p.col)}); }

struct Car {
  std::int64_t time;
  Point at;
  int id;
  bool operator>(const Car& o) const {
    return std::tie(time, at.row, at.col, id) > std::tie(o.time, o.at.row, o.at.col, o.id);
  }
};

}  // namespace

std::span<const std::string_view> scorer_names() { return kNames; }

RidesInstance parse_rides(std::string_view text) {
  LineReader reader(text);
  auto head = reader.integers(6, "header R C F N B T");
  RidesInstance in;
  in.grid_rows = head[0];
  in.grid_cols = head[1];
  in.fleet = head[2];
  const auto n = head[3];
  in.bonus = head[4];
  in.total_time = head[5];
  if (in.grid_rows < 1 || in.grid_cols < 1 || in.fleet < 1 || n < 0 || in.bonus < 0 ||
      in.total_time < 1) {
    throw InputError("line 1: header values out of range");
  }
  in.rides.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    auto v = reader.integers(6, "ride a b x y s f");
    Ride r{{v[0], v[1]}, {v[2], v[3]}, v[4], v[5]};
    if (v[0] < 0 || v[1] < 0 || v[2] < 0 || v[3] < 0 || r.earliest_start < 0 ||
        r.earliest_start > r.latest_finish) {
      throw InputError("line " + std::to_string(reader.line_number()) + ": invalid ride");
    }
    in.rides.push_back(r);
  }
  reader.expect_end();
  return in;
}

Schedule run_greedy(const RidesInstance& in, const lang::BoundScorer& scorer,
                    sandbox::RunControl& control) {
  static const auto shape = lang::RecordShape::make(
      {"start", "end", "earliest_start", "latest_finish", "length", "index"});
  std::vector<Value> ride_values;
  ride_values.reserve(in.rides.size());
  for (std::size_t i = 0; i < in.rides.size(); ++i) {
    const Ride& r = in.rides[i];
    ride_values.push_back(Value::record(
        shape, {point_value(r.start), point_value(r.end), Value::integer(r.earliest_start),
                Value::integer(r.latest_finish), Value::integer(r.length()),
                Value::integer(static_cast<std::int64_t>(i))}));
  }
  std::vector<int> remaining(in.rides.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = static_cast<int>(i);

  Schedule out;
  out.cars.resize(static_cast<std::size_t>(in.fleet));
  std::priority_queue<Car, std::vector<Car>, std::greater<>> cars;
  for (int c = 0; c < static_cast<int>(in.fleet); ++c) cars.push({0, {0, 0}, c});

  Value live;
  bool live_stale = true;
  std::array<Value, 3> args;
  while (true) {
    control.checkpoint();
    const Car car = cars.top();
    cars.pop();
    if (car.time >= in.total_time) break;
    if (live_stale) {
      std::vector<Value> items;
      items.reserve(remaining.size());
      for (int i : remaining) items.push_back(ride_values[static_cast<std::size_t>(i)]);
      live = Value::list(std::move(items));
      live_stale = false;
    }
    args[0] = point_value(car.at);
    args[1] = Value::integer(car.time);
    args[2] = live;
    const Value picked = control.score(scorer, args);
    if (picked.kind() != lang::Kind::kInt) {
      throw sandbox::Rejected("ride picker returned " + std::string(lang::kind_name(picked.kind())) +
                              ", expected an integer");
    }
    const std::int64_t idx = picked.as_int();
    if (idx < 0 || idx >= static_cast<std::int64_t>(remaining.size())) {
      cars.push({in.total_time, car.at, car.id});
      continue;
    }
    const int ride_id = remaining[static_cast<std::size_t>(idx)];
    remaining.erase(remaining.begin() + idx);
    live_stale = true;
    const Ride& r = in.rides[static_cast<std::size_t>(ride_id)];
    std::int64_t pickup = car.time + distance(r.start, car.at);
    if (pickup < r.earliest_start) pickup = r.earliest_start;
    const std::int64_t free_time = pickup + r.length();
    if (free_time <= r.latest_finish) {
      out.backbone_score += r.length();
      if (pickup == r.earliest_start) out.backbone_score += in.bonus;
    }
    out.cars[static_cast<std::size_t>(car.id)].push_back(ride_id);
    cars.push({free_time, r.end, car.id});
  }
  return out;
}

std::int64_t score_schedule(const RidesInstance& in, const Schedule& schedule) {
  if (schedule.cars.size() > static_cast<std::size_t>(in.fleet)) {
    throw InvalidSolution("schedule uses more cars than the fleet");
  }
  std::vector<bool> used(in.rides.size(), false);
  std::int64_t score = 0;
  for (const auto& rides : schedule.cars) {
    std::int64_t time = 0;
    Point at{0, 0};
    for (int id : rides) {
      if (id < 0 || static_cast<std::size_t>(id) >= in.rides.size()) {
        throw InvalidSolution("ride index " + std::to_string(id) + " out of range");
      }
      if (used[static_cast<std::size_t>(id)]) {
        throw InvalidSolution("ride " + std::to_string(id) + " assigned twice");
      }
      used[static_cast<std::size_t>(id)] = true;
      const Ride& r = in.rides[static_cast<std::size_t>(id)];
      const bool started_in_time = time < in.total_time;
      const std::int64_t pickup = std::max(r.earliest_start, time + distance(r.start, at));
      const std::int64_t free_time = pickup + r.length();
      if (started_in_time && free_time <= r.latest_finish) {
        score += r.length();
        if (pickup == r.earliest_start) score += in.bonus;
      }
      time = free_time;
      at = r.end;
    }
  }
  return score;
}

std::string Schedule::export_text() const {
  std::ostringstream out;
  for (const auto& rides : cars) {
    out << rides.size();
    for (int id : rides) out << ' ' << id;
    out << '\n';
  }
  return out.str();
}

std::shared_ptr<const Instance> RidesProblem::parse(std::string_view bytes) const {
  return std::make_shared<RidesInstance>(parse_rides(bytes));
}

std::unique_ptr<Solution> RidesProblem::run_backbone(const Instance& instance,
                                                     const lang::ScoringProgram& program,
                                                     sandbox::RunControl& control) const {
  lang::BoundScorer scorer(program, scorer_names());
  return std::make_unique<Schedule>(run_greedy(instance_as<RidesInstance>(instance), scorer, control));
}

std::int64_t RidesProblem::evaluate(const Instance& instance, const Solution& solution) const {
  return score_schedule(instance_as<RidesInstance>(instance), solution_as<Schedule>(solution));
}

std::string_view RidesProblem::base_scorer() const {
  return R"(fn score(coords, time, rides) {
  for i in range(len(rides)) {
    let r = rides[i];
    let pickup_time = time + abs(coords[0] - r.start[0]) + abs(coords[1] - r.start[1]);
    if pickup_time >= r.earliest_start and pickup_time + r.length < r.latest_finish {
      return i;
    }
  }
  return -1;
}
)";
}

std::string_view RidesProblem::describe_backbone() const {
  return R"(Task: a fleet of cars serves rides on a grid before time T. Driving between
two points takes their Manhattan distance. A ride scores its length when it
finishes no later than latest_finish, plus a bonus when it starts exactly at
earliest_start. A car that arrives early waits.

Backbone: cars sit in a priority queue keyed by the time they become free
(all free at time 0 at (0, 0)). The earliest free car is popped and the scorer
picks which remaining ride it takes next. An index outside the list retires
the car. The chosen ride is removed from the list and the car re-enters the
queue at its drop-off time and place.

Scorer parameters (declare any subset):
  coords  (row, col) tuple of the car
  time    integer time at which the car is free
  rides   list of remaining rides, each a record
          {start, end, earliest_start, latest_finish, length, index}
          where start and end are (row, col) tuples
Return an integer index into rides, or -1 to retire the car.
)";
}

}  // namespace hcevo::problems::rides
