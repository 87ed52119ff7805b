#include "hcevo/problems/traffic2021.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <sstream>

#include "hcevo/problems/line_reader.hpp"

namespace hcevo::problems::traffic {

namespace {

using lang::Value;

constexpr std::array<std::string_view, 8> kNames = {
    "street", "cars", "intersections", "used_streets", "bonus", "time", "curr_size", "give_pos"};

enum Arg { kStreet, kCars, kIntersections, kUsed, kBonus, kTime, kCurrSize, kGivePos };

std::int64_t integer_result(const Value& v, const char* what) {
  if (v.kind() != lang::Kind::kInt) {
    throw sandbox::Rejected(std::string(what) + " must be an integer, scorer returned " +
                            std::string(lang::kind_name(v.kind())));
  }
  return v.as_int();
}

// Values handed to the scorer; the large ones are built only when the
// program declares them.
struct ScorerInputs {
  std::vector<Value> streets;
  std::array<Value, 8> args;

  ScorerInputs(const TrafficInstance& in, const lang::BoundScorer& scorer,
               const std::vector<std::pair<int, int>>& used) {
    static const auto street_shape =
        lang::RecordShape::make({"name", "length", "start_id", "end_id", "index"});
    static const auto car_shape = lang::RecordShape::make({"index", "route"});
    static const auto node_shape = lang::RecordShape::make({"index", "roads_in", "roads_out"});
    streets.reserve(in.streets.size());
    for (std::size_t i = 0; i < in.streets.size(); ++i) {
      const Street& s = in.streets[i];
      streets.push_back(Value::record(
          street_shape, {Value::text(s.name), Value::integer(s.length), Value::integer(s.start_id),
                         Value::integer(s.end_id), Value::integer(static_cast<std::int64_t>(i))}));
    }
    auto street_list = [&](const std::vector<int>& ids) {
      std::vector<Value> items;
      items.reserve(ids.size());
      for (int id : ids) items.push_back(streets[static_cast<std::size_t>(id)]);
      return Value::list(std::move(items));
    };
    if (scorer.uses(kCars)) {
      std::vector<Value> cars;
      for (std::size_t c = 0; c < in.routes.size(); ++c) {
        cars.push_back(Value::record(
            car_shape, {Value::integer(static_cast<std::int64_t>(c)), street_list(in.routes[c])}));
      }
      args[kCars] = Value::list(std::move(cars));
    }
    if (scorer.uses(kIntersections)) {
      std::vector<Value> nodes;
      for (std::size_t i = 0; i < in.intersections.size(); ++i) {
        nodes.push_back(Value::record(node_shape, {Value::integer(static_cast<std::int64_t>(i)),
                                                   street_list(in.intersections[i].roads_in),
                                                   street_list(in.intersections[i].roads_out)}));
      }
      args[kIntersections] = Value::list(std::move(nodes));
    }
    if (scorer.uses(kUsed)) {
      std::vector<std::pair<Value, Value>> entries;
      for (auto [street, count] : used) {
        entries.emplace_back(Value::text(in.streets[static_cast<std::size_t>(street)].name),
                             Value::integer(count));
      }
      args[kUsed] = Value::map(std::move(entries));
    }
    args[kBonus] = Value::integer(in.bonus);
  }

  std::int64_t call(const lang::BoundScorer& scorer, sandbox::RunControl& control, int street,
                    int time, std::size_t curr_size, bool give_pos) {
    args[kStreet] = streets[static_cast<std::size_t>(street)];
    args[kTime] = Value::integer(time);
    args[kCurrSize] = Value::integer(static_cast<std::int64_t>(curr_size));
    args[kGivePos] = Value::boolean(give_pos);
    return integer_result(control.score(scorer, args), give_pos ? "position" : "duration");
  }
};

std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

std::span<const std::string_view> scorer_names() { return kNames; }

TrafficInstance parse_traffic(std::string_view text) {
  LineReader reader(text);
  auto head = reader.integers(5, "header D I S V F");
  const auto d = head[0], n_int = head[1], n_streets = head[2], n_cars = head[3], f = head[4];
  if (d < 1 || n_int < 1 || n_streets < 0 || n_cars < 0 || f < 0 || d > (1 << 30) ||
      f > (1 << 30)) {
    throw InputError("line 1: header values out of range");
  }
  TrafficInstance in;
  in.deadline = static_cast<int>(d);
  in.bonus = static_cast<int>(f);
  in.intersections.resize(static_cast<std::size_t>(n_int));
  for (std::int64_t i = 0; i < n_streets; ++i) {
    auto parts = reader.fields(4, "street B E name L");
    const auto b = reader.integer(parts[0], "street start");
    const auto e = reader.integer(parts[1], "street end");
    const auto len = reader.integer(parts[3], "street length");
    const std::string where = "line " + std::to_string(reader.line_number()) + ": ";
    if (b < 0 || b >= n_int || e < 0 || e >= n_int) throw InputError(where + "intersection out of range");
    if (len < 1 || len > (1 << 30)) throw InputError(where + "street length must be positive");
    std::string name(parts[2]);
    const int id = static_cast<int>(in.streets.size());
    if (!in.street_index.emplace(name, id).second) throw InputError(where + "duplicate street " + name);
    in.streets.push_back({std::move(name), static_cast<int>(len), static_cast<int>(b), static_cast<int>(e)});
    in.intersections[static_cast<std::size_t>(e)].roads_in.push_back(id);
    in.intersections[static_cast<std::size_t>(b)].roads_out.push_back(id);
  }
  for (std::int64_t c = 0; c < n_cars; ++c) {
    auto parts = reader.fields(0, "car route");
    const auto p = reader.integer(parts[0], "route length");
    const std::string where = "line " + std::to_string(reader.line_number()) + ": ";
    if (p < 2) throw InputError(where + "a route needs at least two streets");
    if (static_cast<std::size_t>(p) + 1 != parts.size()) throw InputError(where + "route length mismatch");
    std::vector<int> route;
    for (std::size_t k = 1; k < parts.size(); ++k) {
      auto it = in.street_index.find(std::string(parts[k]));
      if (it == in.street_index.end()) {
        throw InputError(where + "unknown street " + std::string(parts[k]));
      }
      route.push_back(it->second);
    }
    in.routes.push_back(std::move(route));
  }
  reader.expect_end();
  return in;
}

std::vector<std::pair<int, int>> used_streets(const TrafficInstance& in) {
  std::vector<int> slot(in.streets.size(), -1);
  std::vector<std::pair<int, int>> out;
  for (const auto& route : in.routes) {
    std::int64_t travel = 0;
    for (std::size_t k = 1; k < route.size(); ++k) travel += in.streets[static_cast<std::size_t>(route[k])].length;
    if (travel > in.deadline) continue;
    for (std::size_t k = 0; k + 1 < route.size(); ++k) {
      const auto s = static_cast<std::size_t>(route[k]);
      if (slot[s] < 0) {
        slot[s] = static_cast<int>(out.size());
        out.emplace_back(route[k], 0);
      }
      ++out[static_cast<std::size_t>(slot[s])].second;
    }
  }
  return out;
}

Schedule build_schedule(const TrafficInstance& in, const lang::BoundScorer& scorer,
                        sandbox::RunControl& control) {
  const auto used = used_streets(in);
  ScorerInputs inputs(in, scorer, used);
  const std::size_t n_int = in.intersections.size();
  const std::size_t n_cars = in.routes.size();

  std::vector<std::vector<int>> slots(n_int);  // street id or -1
  std::vector<bool> open(in.streets.size(), false);
  for (auto [street, count] : used) {
    open[static_cast<std::size_t>(street)] = true;
    slots[static_cast<std::size_t>(in.streets[static_cast<std::size_t>(street)].end_id)].push_back(-1);
  }

  auto place = [&](int street, int time) {
    const auto node = static_cast<std::size_t>(in.streets[static_cast<std::size_t>(street)].end_id);
    auto& row = slots[node];
    const auto size = static_cast<std::int64_t>(row.size());
    auto pos = static_cast<std::size_t>(floor_mod(inputs.call(scorer, control, street, time, row.size(), true), size));
    while (row[pos] != -1) pos = (pos + 1) % row.size();
    row[pos] = street;
    open[static_cast<std::size_t>(street)] = false;
  };

  std::vector<std::deque<int>> queues(in.streets.size());
  std::vector<bool> pending_flag(in.streets.size(), false);
  std::vector<int> pending;
  auto mark_candidate = [&](int street) {
    const auto s = static_cast<std::size_t>(street);
    if (open[s] && !pending_flag[s]) {
      pending_flag[s] = true;
      pending.push_back(street);
    }
  };
  for (std::size_t c = 0; c < n_cars; ++c) {
    queues[static_cast<std::size_t>(in.routes[c][0])].push_back(static_cast<int>(c));
    mark_candidate(in.routes[c][0]);
  }

  std::vector<std::size_t> road(n_cars, 0);
  std::vector<int> travel(n_cars, 0);
  std::vector<int> moving;
  std::vector<std::size_t> index(n_int, 0);
  std::vector<int> left(n_int, 0);
  for (std::size_t i = 0; i < n_int; ++i) left[i] = slots[i].empty() ? in.deadline + 1 : 1;

  for (int t = 0; t < in.deadline; ++t) {
    control.checkpoint();
    std::sort(pending.begin(), pending.end());
    for (int street : pending) {
      if (open[static_cast<std::size_t>(street)]) place(street, t);
    }
    pending.clear();

    for (std::size_t i = 0; i < n_int; ++i) {
      if (slots[i].empty()) continue;
      const int green = slots[i][index[i]];
      if (green < 0) continue;
      auto& q = queues[static_cast<std::size_t>(green)];
      if (q.empty()) continue;
      const int car = q.front();
      q.pop_front();
      const auto c = static_cast<std::size_t>(car);
      ++road[c];
      travel[c] = in.streets[static_cast<std::size_t>(in.routes[c][road[c]])].length;
      moving.push_back(car);
    }

    std::size_t kept = 0;
    for (int car : moving) {
      const auto c = static_cast<std::size_t>(car);
      if (--travel[c] > 0) {
        moving[kept++] = car;
        continue;
      }
      if (road[c] + 1 < in.routes[c].size()) {
        const int street = in.routes[c][road[c]];
        queues[static_cast<std::size_t>(street)].push_back(car);
        mark_candidate(street);
      }
    }
    moving.resize(kept);

    for (std::size_t i = 0; i < n_int; ++i) {
      if (--left[i] == 0) {
        index[i] = (index[i] + 1) % slots[i].size();
        left[i] = 1;
      }
    }
  }

  for (auto [street, count] : used) {
    if (open[static_cast<std::size_t>(street)]) place(street, in.deadline);
  }

  Schedule schedule;
  schedule.instance = &in;
  schedule.lights.resize(n_int);
  for (std::size_t i = 0; i < n_int; ++i) {
    control.checkpoint();
    for (int street : slots[i]) {
      const std::int64_t d = inputs.call(scorer, control, street, in.deadline, slots[i].size(), false);
      if (d < 1) throw sandbox::Rejected("green duration " + std::to_string(d) + " is below 1");
      // Any duration past the deadline behaves the same; cap it to stay in int range.
      schedule.lights[i].push_back({street, static_cast<int>(std::min<std::int64_t>(d, in.deadline + 1))});
    }
  }
  return schedule;
}

void validate(const TrafficInstance& in, const Schedule& schedule) {
  if (schedule.lights.size() != in.intersections.size()) {
    throw InvalidSolution("schedule covers " + std::to_string(schedule.lights.size()) +
                          " intersections, instance has " + std::to_string(in.intersections.size()));
  }
  std::vector<bool> seen(in.streets.size(), false);
  for (std::size_t i = 0; i < schedule.lights.size(); ++i) {
    for (const Green& g : schedule.lights[i]) {
      if (g.street < 0 || static_cast<std::size_t>(g.street) >= in.streets.size()) {
        throw InvalidSolution("unknown street id " + std::to_string(g.street));
      }
      const Street& s = in.streets[static_cast<std::size_t>(g.street)];
      if (static_cast<std::size_t>(s.end_id) != i) {
        throw InvalidSolution("street " + s.name + " does not enter intersection " + std::to_string(i));
      }
      if (seen[static_cast<std::size_t>(g.street)]) throw InvalidSolution("street " + s.name + " scheduled twice");
      seen[static_cast<std::size_t>(g.street)] = true;
      if (g.duration < 1) throw InvalidSolution("street " + s.name + " has duration below 1");
    }
  }
}

SimResult simulate(const TrafficInstance& in, const Schedule& schedule, sandbox::RunControl* control) {
  validate(in, schedule);
  const std::size_t n_int = in.intersections.size();
  const std::size_t n_cars = in.routes.size();
  std::vector<std::deque<int>> queues(in.streets.size());
  for (std::size_t c = 0; c < n_cars; ++c) {
    queues[static_cast<std::size_t>(in.routes[c][0])].push_back(static_cast<int>(c));
  }
  std::vector<std::size_t> road(n_cars, 0);
  std::vector<int> travel(n_cars, 0);
  std::vector<int> moving;
  std::vector<std::size_t> index(n_int, 0);
  std::vector<int> left(n_int, 0);
  for (std::size_t i = 0; i < n_int; ++i) {
    if (!schedule.lights[i].empty()) left[i] = schedule.lights[i][0].duration;
  }
  SimResult result;
  result.finished.assign(n_cars, false);

  for (int t = 0; t < in.deadline; ++t) {
    if (control != nullptr) control->checkpoint();
    for (std::size_t i = 0; i < n_int; ++i) {
      const auto& lights = schedule.lights[i];
      if (lights.empty()) continue;
      auto& q = queues[static_cast<std::size_t>(lights[index[i]].street)];
      if (q.empty()) continue;
      const int car = q.front();
      q.pop_front();
      const auto c = static_cast<std::size_t>(car);
      ++road[c];
      travel[c] = in.streets[static_cast<std::size_t>(in.routes[c][road[c]])].length;
      moving.push_back(car);
    }
    std::size_t kept = 0;
    for (int car : moving) {
      const auto c = static_cast<std::size_t>(car);
      if (--travel[c] > 0) {
        moving[kept++] = car;
        continue;
      }
      if (road[c] + 1 == in.routes[c].size()) {
        result.score += in.bonus + (in.deadline - t - 1);
        result.finished[c] = true;
      } else {
        queues[static_cast<std::size_t>(in.routes[c][road[c]])].push_back(car);
      }
    }
    moving.resize(kept);
    for (std::size_t i = 0; i < n_int; ++i) {
      const auto& lights = schedule.lights[i];
      if (lights.empty()) continue;
      if (--left[i] == 0) {
        index[i] = (index[i] + 1) % lights.size();
        left[i] = lights[index[i]].duration;
      }
    }
  }
  return result;
}

std::int64_t simulate_and_score(const TrafficInstance& in, const Schedule& schedule) {
  return simulate(in, schedule).score;
}

Schedule prune_failed_streets(const TrafficInstance& in, const Schedule& schedule,
                              sandbox::RunControl* control) {
  const SimResult sim = simulate(in, schedule, control);
  std::vector<bool> keep(in.streets.size(), false);
  for (std::size_t c = 0; c < in.routes.size(); ++c) {
    if (!sim.finished[c]) continue;
    const auto& route = in.routes[c];
    for (std::size_t k = 0; k + 1 < route.size(); ++k) keep[static_cast<std::size_t>(route[k])] = true;
  }
  Schedule out;
  out.instance = schedule.instance;
  out.lights.resize(schedule.lights.size());
  for (std::size_t i = 0; i < schedule.lights.size(); ++i) {
    for (const Green& g : schedule.lights[i]) {
      if (keep[static_cast<std::size_t>(g.street)]) out.lights[i].push_back(g);
    }
  }
  return out;
}

std::string Schedule::export_text() const {
  std::ostringstream out;
  std::size_t active = 0;
  for (const auto& l : lights) active += l.empty() ? 0 : 1;
  out << active << '\n';
  for (std::size_t i = 0; i < lights.size(); ++i) {
    if (lights[i].empty()) continue;
    out << i << '\n' << lights[i].size() << '\n';
    for (const Green& g : lights[i]) {
      if (instance != nullptr) {
        out << instance->streets[static_cast<std::size_t>(g.street)].name;
      } else {
        out << '#' << g.street;
      }
      out << ' ' << g.duration << '\n';
    }
  }
  return out.str();
}

std::shared_ptr<const Instance> TrafficProblem::parse(std::string_view bytes) const {
  return std::make_shared<TrafficInstance>(parse_traffic(bytes));
}

std::unique_ptr<Solution> TrafficProblem::run_backbone(const Instance& instance,
                                                       const lang::ScoringProgram& program,
                                                       sandbox::RunControl& control) const {
  const auto& in = instance_as<TrafficInstance>(instance);
  lang::BoundScorer scorer(program, scorer_names());
  const Schedule built = build_schedule(in, scorer, control);
  return std::make_unique<Schedule>(prune_failed_streets(in, built, &control));
}

std::int64_t TrafficProblem::evaluate(const Instance& instance, const Solution& solution) const {
  return simulate_and_score(instance_as<TrafficInstance>(instance), solution_as<Schedule>(solution));
}

std::string_view TrafficProblem::base_scorer() const {
  return R"(fn score(street, cars, intersections, used_streets, bonus, time, curr_size, give_pos) {
  if give_pos {
    return 0;
  }
  return 1;
}
)";
}

std::string_view TrafficProblem::describe_backbone() const {
  return R"(Task: choose traffic light schedules. Each intersection cycles through its
incoming streets, each green for a whole number of seconds; one queued car
crosses per green second. A car finishing its route at time t before the
deadline D earns the bonus plus D - t.

Backbone, three phases:
1. Simulate with every green lasting one second. When a car first queues on a
   street that has no slot yet, ask the scorer for a position
   (give_pos = true); it is reduced modulo the number of slots of that
   intersection and moved to the next free slot if taken.
2. Streets never reached get a position the same way at time D.
3. For each slot, ask the scorer for the green duration (give_pos = false).
Finally streets used only by cars that fail to finish are dropped.

Scorer parameters (declare any subset):
  street         record {name, length, start_id, end_id, index}
  cars           list of records {index, route}, route a list of streets
  intersections  list of records {index, roads_in, roads_out}
  used_streets   mapping street name -> number of cars passing it
  bonus          integer
  time           integer simulation time of the request
  curr_size      number of slots at the street's intersection
  give_pos       boolean
Return an integer position or a duration of at least 1.
)";
}

}  // namespace hcevo::problems::traffic
