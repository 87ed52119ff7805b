#include "hcevo/problems/datacenter2015.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>

#include "hcevo/problems/line_reader.hpp"

namespace hcevo::problems::datacenter {

namespace {

using lang::Value;

constexpr std::array<std::string_view, 5> kNames = {"server", "row", "pool", "pools_per_row",
                                                    "rate_server"};

double numeric_score(const Value& v) {
  if (!v.is_number()) {
    throw sandbox::Rejected("scorer returned " + std::string(lang::kind_name(v.kind())) +
                            ", expected a number");
  }
  return v.to_double();
}

std::vector<Value> server_values(const DataCenterInstance& in) {
  static const auto shape = lang::RecordShape::make({"index", "size", "capacity"});
  std::vector<Value> out;
  out.reserve(in.servers.size());
  for (const auto& s : in.servers) {
    out.push_back(Value::record(
        shape, {Value::integer(s.index), Value::integer(s.size), Value::integer(s.capacity)}));
  }
  return out;
}

}  // namespace

std::span<const std::string_view> scorer_names() { return kNames; }

DataCenterInstance parse_datacenter(std::string_view text) {
  LineReader reader(text);
  auto head = reader.integers(5, "header R S U P M");
  const auto rows = head[0], slots = head[1], unavailable = head[2], pools = head[3],
             servers = head[4];
  if (rows < 1 || slots < 1 || pools < 1 || unavailable < 0 || servers < 0) {
    throw InputError("line 1: header values out of range");
  }
  DataCenterInstance in;
  in.n_rows = static_cast<int>(rows);
  in.n_slots = static_cast<int>(slots);
  in.n_pools = static_cast<int>(pools);
  in.row_blocks.resize(static_cast<std::size_t>(rows));
  for (std::int64_t i = 0; i < unavailable; ++i) {
    auto xy = reader.integers(2, "unavailable slot");
    if (xy[0] < 0 || xy[0] >= rows || xy[1] < 0 || xy[1] >= slots) {
      throw InputError("line " + std::to_string(reader.line_number()) +
                       ": unavailable slot out of range");
    }
    in.row_blocks[static_cast<std::size_t>(xy[0])].push_back(static_cast<int>(xy[1]));
  }
  for (auto& blocks : in.row_blocks) {
    std::sort(blocks.begin(), blocks.end());
    if (std::adjacent_find(blocks.begin(), blocks.end()) != blocks.end()) {
      throw InputError("duplicate unavailable slot");
    }
    blocks.push_back(in.n_slots);
  }
  for (std::int64_t i = 0; i < servers; ++i) {
    auto sc = reader.integers(2, "server size capacity");
    if (sc[0] < 1 || sc[1] < 1 || sc[0] > std::numeric_limits<int>::max() ||
        sc[1] > std::numeric_limits<int>::max()) {
      throw InputError("line " + std::to_string(reader.line_number()) +
                       ": server size and capacity must be positive");
    }
    in.servers.push_back({static_cast<int>(i), static_cast<int>(sc[0]), static_cast<int>(sc[1])});
  }
  reader.expect_end();
  return in;
}

Placement place_servers(const DataCenterInstance& in, const lang::BoundScorer& scorer,
                        sandbox::RunControl& control) {
  const auto n_rows = static_cast<std::size_t>(in.n_rows);
  std::vector<int> curr_ind(n_rows, 0);
  std::vector<std::size_t> curr_block(n_rows, 0);
  std::vector<bool> row_open(n_rows, true);
  std::size_t open_rows = n_rows;
  std::vector<int> open_servers(in.servers.size());
  for (std::size_t i = 0; i < open_servers.size(); ++i) open_servers[i] = static_cast<int>(i);

  Placement placement;
  placement.servers.resize(in.servers.size());
  const auto servers = server_values(in);
  std::array<Value, 5> args{Value{}, Value{}, Value{}, Value{}, Value::boolean(true)};

  auto close_row = [&](std::size_t row) {
    row_open[row] = false;
    --open_rows;
  };

  while (open_rows > 0 && !open_servers.empty()) {
    control.checkpoint();
    for (std::size_t row = 0; row < n_rows; ++row) {
      if (open_servers.empty()) break;
      if (!row_open[row]) continue;
      const auto& blocks = in.row_blocks[row];
      while (curr_ind[row] == blocks[curr_block[row]]) {
        ++curr_ind[row];
        ++curr_block[row];
        if (curr_ind[row] >= in.n_slots) {
          close_row(row);
          break;
        }
      }
      if (!row_open[row]) continue;
      const int next_pos = blocks[curr_block[row]];
      std::size_t best = open_servers.size();
      double best_score = -1.0;
      args[1] = Value::integer(static_cast<std::int64_t>(row));
      for (std::size_t k = 0; k < open_servers.size(); ++k) {
        const auto s_id = static_cast<std::size_t>(open_servers[k]);
        if (curr_ind[row] + in.servers[s_id].size > next_pos) continue;
        args[0] = servers[s_id];
        const double score = numeric_score(control.score(scorer, args));
        if (best == open_servers.size() || score > best_score) {
          best_score = score;
          best = k;
        }
      }
      if (best == open_servers.size()) {
        curr_ind[row] = next_pos;
        if (curr_ind[row] >= in.n_slots) close_row(row);
      } else {
        const int s_id = open_servers[best];
        placement.servers[static_cast<std::size_t>(s_id)] = {static_cast<int>(row), curr_ind[row],
                                                             -1};
        placement.order.push_back(s_id);
        curr_ind[row] += in.servers[static_cast<std::size_t>(s_id)].size;
        open_servers.erase(open_servers.begin() + static_cast<std::ptrdiff_t>(best));
      }
    }
  }
  return placement;
}

void assign_pools(const DataCenterInstance& in, Placement& placement,
                  const lang::BoundScorer& scorer, sandbox::RunControl& control,
                  PoolOrder order) {
  const auto n_rows = static_cast<std::size_t>(in.n_rows);
  const auto n_pools = static_cast<std::size_t>(in.n_pools);
  std::vector<std::vector<std::int64_t>> cap(n_rows, std::vector<std::int64_t>(n_pools, 0));
  std::vector<Value> pool_keys;
  for (std::size_t p = 0; p < n_pools; ++p) pool_keys.push_back(Value::integer(static_cast<std::int64_t>(p)));

  auto row_map = [&](std::size_t row) {
    std::vector<std::pair<Value, Value>> entries;
    entries.reserve(n_pools);
    for (std::size_t p = 0; p < n_pools; ++p) entries.emplace_back(pool_keys[p], Value::integer(cap[row][p]));
    return Value::sorted_map(std::move(entries));
  };
  std::vector<std::pair<Value, Value>> outer;
  for (std::size_t r = 0; r < n_rows; ++r) {
    outer.emplace_back(Value::integer(static_cast<std::int64_t>(r)), row_map(r));
  }
  Value pools_per_row = Value::sorted_map(outer);

  std::vector<int> sequence = placement.order;
  if (order == PoolOrder::kServerIndex) std::sort(sequence.begin(), sequence.end());

  const bool wants_rows = scorer.uses(3);
  const auto servers = server_values(in);
  std::array<Value, 5> args{Value{}, Value{}, Value{}, Value{}, Value::boolean(false)};
  for (int s_id : sequence) {
    control.checkpoint();
    auto& loc = placement.servers[static_cast<std::size_t>(s_id)];
    const auto row = static_cast<std::size_t>(loc.row);
    args[0] = servers[static_cast<std::size_t>(s_id)];
    args[1] = Value::integer(loc.row);
    args[3] = pools_per_row;
    std::size_t best = n_pools;
    double best_score = -1.0;
    for (std::size_t p = 0; p < n_pools; ++p) {
      args[2] = pool_keys[p];
      const double score = numeric_score(control.score(scorer, args));
      if (best == n_pools || score > best_score) {
        best_score = score;
        best = p;
      }
    }
    loc.pool = static_cast<int>(best);
    cap[row][best] += in.servers[static_cast<std::size_t>(s_id)].capacity;
    if (wants_rows) {
      outer[row].second = row_map(row);
      pools_per_row = Value::sorted_map(outer);
    }
  }
}

void validate(const DataCenterInstance& in, const Placement& placement) {
  if (placement.servers.size() != in.servers.size()) {
    throw InvalidSolution("placement lists " + std::to_string(placement.servers.size()) +
                          " servers, instance has " + std::to_string(in.servers.size()));
  }
  std::vector<std::vector<int>> owner(static_cast<std::size_t>(in.n_rows),
                                      std::vector<int>(static_cast<std::size_t>(in.n_slots), -1));
  for (std::size_t r = 0; r < owner.size(); ++r) {
    const auto& blocks = in.row_blocks[r];
    for (std::size_t b = 0; b + 1 < blocks.size(); ++b) owner[r][static_cast<std::size_t>(blocks[b])] = -2;
  }
  for (std::size_t i = 0; i < placement.servers.size(); ++i) {
    const auto& loc = placement.servers[i];
    if (!loc.placed()) continue;
    const std::string who = "server " + std::to_string(i);
    const int size = in.servers[i].size;
    if (loc.row >= in.n_rows || loc.slot < 0 || loc.slot + size > in.n_slots) {
      throw InvalidSolution(who + " is out of bounds");
    }
    if (loc.pool < 0 || loc.pool >= in.n_pools) throw InvalidSolution(who + " has no valid pool");
    auto& row = owner[static_cast<std::size_t>(loc.row)];
    for (int s = loc.slot; s < loc.slot + size; ++s) {
      int& cell = row[static_cast<std::size_t>(s)];
      if (cell == -2) throw InvalidSolution(who + " covers an unavailable slot");
      if (cell >= 0) throw InvalidSolution(who + " overlaps server " + std::to_string(cell));
      cell = static_cast<int>(i);
    }
  }
}

std::int64_t guaranteed_capacity(const DataCenterInstance& in, const Placement& placement) {
  validate(in, placement);
  const auto n_pools = static_cast<std::size_t>(in.n_pools);
  std::vector<std::vector<std::int64_t>> cap(n_pools,
                                             std::vector<std::int64_t>(static_cast<std::size_t>(in.n_rows), 0));
  for (std::size_t i = 0; i < placement.servers.size(); ++i) {
    const auto& loc = placement.servers[i];
    if (!loc.placed()) continue;
    cap[static_cast<std::size_t>(loc.pool)][static_cast<std::size_t>(loc.row)] += in.servers[i].capacity;
  }
  std::int64_t result = std::numeric_limits<std::int64_t>::max();
  for (const auto& rows : cap) {
    std::int64_t total = 0, worst = 0;
    for (auto c : rows) {
      total += c;
      worst = std::max(worst, c);
    }
    result = std::min(result, total - worst);
  }
  return result;
}

std::string Placement::export_text() const {
  std::ostringstream out;
  for (const auto& loc : servers) {
    if (loc.placed()) {
      out << loc.row << ' ' << loc.slot << ' ' << loc.pool << '\n';
    } else {
      out << "x\n";
    }
  }
  return out.str();
}

std::shared_ptr<const Instance> DataCenterProblem::parse(std::string_view bytes) const {
  return std::make_shared<DataCenterInstance>(parse_datacenter(bytes));
}

std::unique_ptr<Solution> DataCenterProblem::run_backbone(const Instance& instance,
                                                          const lang::ScoringProgram& program,
                                                          sandbox::RunControl& control) const {
  const auto& in = instance_as<DataCenterInstance>(instance);
  lang::BoundScorer scorer(program, scorer_names());
  auto placement = std::make_unique<Placement>(place_servers(in, scorer, control));
  assign_pools(in, *placement, scorer, control, options_.pool_order);
  return placement;
}

std::int64_t DataCenterProblem::evaluate(const Instance& instance, const Solution& solution) const {
  return guaranteed_capacity(instance_as<DataCenterInstance>(instance),
                             solution_as<Placement>(solution));
}

std::string_view DataCenterProblem::base_scorer() const {
  return R"(fn score(server, row, pool, pools_per_row, rate_server) {
  if rate_server {
    return server.capacity / server.size;
  }
  let total_sum = 0;
  for c_row in pools_per_row {
    let total_sum = total_sum + pools_per_row[c_row][pool];
  }
  return -total_sum + pools_per_row[row][pool];
}
)";
}

std::string_view DataCenterProblem::describe_backbone() const {
  return R"(Task: place servers into the rows of a data center and assign each to a pool.
Each row has slots, some unavailable. A server occupies `size` consecutive free
slots and provides `capacity`. The objective is the guaranteed capacity: the
minimum over pools of the pool's total capacity minus its largest single-row
share.

Phase 1 (rate_server = true, pool = none, pools_per_row = none): rows are
visited in a round-robin. At the current position of a row, every unplaced
server that fits before the next unavailable slot is scored; the highest score
is placed there (earlier server wins ties). If none fits, the position jumps
past the obstacle.

Phase 2 (rate_server = false): for each placed server, every pool id is scored
and the server joins the highest-scoring pool (lowest id wins ties).

Scorer parameters (declare any subset):
  server         record {index, size, capacity}
  row            integer row of the position being filled or of the server
  pool           integer pool id, or none in phase 1
  pools_per_row  mapping row -> mapping pool -> capacity assigned so far
  rate_server    boolean, true in phase 1
Return a number; higher is better.
)";
}

}  // namespace hcevo::problems::datacenter
