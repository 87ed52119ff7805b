#include "hcevo/problems/fishing_ahc039.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

#include "hcevo/problems/line_reader.hpp"
#include "hcevo/rng.hpp"

namespace hcevo::problems::fishing {

namespace {

using lang::Value;

constexpr std::array<std::string_view, 4> kNames = {"grid", "row", "col", "picked_cells"};
constexpr std::array<std::pair<int, int>, 4> kSteps = {{{-1, 0}, {0, -1}, {1, 0}, {0, 1}}};

struct Queued {
  double score;
  int row;
  int col;
  // Max-heap on score, then the smaller cell first.
  bool operator<(const Queued& o) const {
    if (score != o.score) return score < o.score;
    return std::tie(row, col) > std::tie(o.row, o.col);
  }
};

double cell_score(const Value& v) {
  if (!v.is_number()) {
    throw sandbox::Rejected("cell scorer returned " + std::string(lang::kind_name(v.kind())) +
                            ", expected a number");
  }
  const double d = v.to_double();
  if (std::isnan(d)) throw sandbox::Rejected("cell scorer returned NaN");
  return d;
}

Value int_grid(const std::vector<std::vector<int>>& g) {
  std::vector<Value> rows;
  rows.reserve(g.size());
  for (const auto& r : g) {
    std::vector<Value> cells;
    cells.reserve(r.size());
    for (int c : r) cells.push_back(Value::integer(c));
    rows.push_back(Value::list(std::move(cells)));
  }
  return Value::list(std::move(rows));
}

bool boxes_touch(Point a1, Point a2, Point b1, Point b2) {
  return std::max(std::min(a1.x, a2.x), std::min(b1.x, b2.x)) <=
             std::min(std::max(a1.x, a2.x), std::max(b1.x, b2.x)) &&
         std::max(std::min(a1.y, a2.y), std::min(b1.y, b2.y)) <=
             std::min(std::max(a1.y, a2.y), std::max(b1.y, b2.y));
}

std::vector<Point> read_points(LineReader& reader, std::int64_t n, const char* what) {
  std::set<Point> seen;
  for (std::int64_t i = 0; i < n; ++i) {
    auto xy = reader.integers(2, what);
    if (xy[0] < 0 || xy[0] > kCoordMax || xy[1] < 0 || xy[1] > kCoordMax) {
      throw InputError("line " + std::to_string(reader.line_number()) + ": point out of bounds");
    }
    seen.insert({xy[0], xy[1]});
  }
  return {seen.begin(), seen.end()};
}

// Drops repeated vertices and merges straight runs. Returns false when the
// ring folds back on itself or collapses.
bool simplify(std::vector<Point>& ring) {
  for (bool changed = true; changed && ring.size() >= 3;) {
    changed = false;
    const std::size_t n = ring.size();
    for (std::size_t k = 0; k < n; ++k) {
      const Point& prev = ring[(k + n - 1) % n];
      const Point& cur = ring[k];
      const Point& next = ring[(k + 1) % n];
      const bool vertical = prev.x == cur.x && cur.x == next.x;
      const bool horizontal = prev.y == cur.y && cur.y == next.y;
      if (cur != next && !vertical && !horizontal) continue;
      if (cur != next && cur != prev) {
        const std::int64_t d1 = vertical ? cur.y - prev.y : cur.x - prev.x;
        const std::int64_t d2 = vertical ? next.y - cur.y : next.x - cur.x;
        if ((d1 > 0) != (d2 > 0)) return false;
      }
      ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(k));
      changed = true;
      break;
    }
  }
  return ring.size() >= 4;
}

}  // namespace

std::string_view decode_status_name(DecodeStatus status) {
  switch (status) {
    case DecodeStatus::kOk: return "ok";
    case DecodeStatus::kEmpty: return "empty";
    case DecodeStatus::kDisconnected: return "disconnected";
    case DecodeStatus::kPinch: return "pinch";
    case DecodeStatus::kHole: return "hole";
    case DecodeStatus::kDegenerate: return "degenerate";
    case DecodeStatus::kTooManyVertices: return "too-many-vertices";
    case DecodeStatus::kTooLong: return "too-long";
  }
  return "?";
}

std::span<const std::string_view> scorer_names() { return kNames; }

FishInstance parse_fishing(std::string_view text) {
  LineReader reader(text);
  FishInstance in;
  in.n = reader.integers(1, "fish count")[0];
  if (in.n < 1) throw InputError("line 1: fish count must be positive");
  in.mackerels = read_points(reader, in.n, "mackerel x y");
  in.sardines = read_points(reader, in.n, "sardine x y");
  reader.expect_end();
  return in;
}

CoarseGrid coarsen(const FishInstance& in, std::int64_t cell_size) {
  if (cell_size < 1) throw std::invalid_argument("cell size must be positive");
  if (in.mackerels.empty()) throw std::invalid_argument("no mackerels to span a grid");
  CoarseGrid g;
  g.cell_size = cell_size;
  g.min_x = g.min_y = kCoordMax;
  for (const Point& p : in.mackerels) {
    g.min_x = std::min(g.min_x, p.x);
    g.max_x = std::max(g.max_x, p.x);
    g.min_y = std::min(g.min_y, p.y);
    g.max_y = std::max(g.max_y, p.y);
  }
  g.rows = static_cast<int>((g.max_x - g.min_x) / cell_size + 1);
  g.cols = static_cast<int>((g.max_y - g.min_y) / cell_size + 1);
  g.mackerels.assign(static_cast<std::size_t>(g.rows), std::vector<int>(static_cast<std::size_t>(g.cols), 0));
  g.sardines = g.mackerels;
  for (const Point& p : in.mackerels) {
    ++g.mackerels[static_cast<std::size_t>((p.x - g.min_x) / cell_size)]
                 [static_cast<std::size_t>((p.y - g.min_y) / cell_size)];
  }
  for (const Point& p : in.sardines) {
    if (p.x < g.min_x || p.x > g.max_x || p.y < g.min_y || p.y > g.max_y) continue;
    ++g.sardines[static_cast<std::size_t>((p.x - g.min_x) / cell_size)]
                [static_cast<std::size_t>((p.y - g.min_y) / cell_size)];
  }
  return g;
}

Decoded decode_to_polygon(const CellMask& picked, const CoarseGrid& grid, const Limits& limits) {
  Decoded result;
  const int rows = grid.rows, cols = grid.cols;
  auto at = [&](int i, int j) {
    return i >= 0 && j >= 0 && i < rows && j < cols &&
           picked[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0;
  };

  std::size_t count = 0;
  int si = -1, sj = -1;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (at(i, j)) {
        if (count++ == 0) si = i, sj = j;
      }
    }
  }
  if (count == 0) return result;

  {
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0);
    std::vector<std::pair<int, int>> stack{{si, sj}};
    seen[static_cast<std::size_t>(si) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(sj)] = 1;
    std::size_t reached = 0;
    while (!stack.empty()) {
      auto [i, j] = stack.back();
      stack.pop_back();
      ++reached;
      for (auto [di, dj] : kSteps) {
        const int ni = i + di, nj = j + dj;
        if (!at(ni, nj)) continue;
        auto& s = seen[static_cast<std::size_t>(ni) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(nj)];
        if (s == 0) {
          s = 1;
          stack.emplace_back(ni, nj);
        }
      }
    }
    if (reached != count) {
      result.status = DecodeStatus::kDisconnected;
      return result;
    }
  }

  // Lattice vertices (i, j) with 0 <= i <= rows, 0 <= j <= cols; boundary
  // edges run counter-clockwise around the picked cells.
  const std::size_t stride = static_cast<std::size_t>(cols) + 1;
  auto vid = [&](int i, int j) { return static_cast<std::size_t>(i) * stride + static_cast<std::size_t>(j); };
  std::vector<int> next((static_cast<std::size_t>(rows) + 1) * stride, -1);
  std::size_t edges = 0;
  bool pinch = false;
  auto add = [&](int i1, int j1, int i2, int j2) {
    int& slot = next[vid(i1, j1)];
    if (slot != -1) pinch = true;
    slot = static_cast<int>(vid(i2, j2));
    ++edges;
  };
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (!at(i, j)) continue;
      if (!at(i, j - 1)) add(i, j, i + 1, j);
      if (!at(i + 1, j)) add(i + 1, j, i + 1, j + 1);
      if (!at(i, j + 1)) add(i + 1, j + 1, i, j + 1);
      if (!at(i - 1, j)) add(i, j + 1, i, j);
    }
  }
  if (pinch) {
    result.status = DecodeStatus::kPinch;
    return result;
  }

  const std::size_t start = vid(si, sj);
  std::vector<std::pair<int, int>> loop;
  std::size_t v = start;
  do {
    loop.emplace_back(static_cast<int>(v / stride), static_cast<int>(v % stride));
    v = static_cast<std::size_t>(next[v]);
  } while (v != start && loop.size() <= edges);
  if (loop.size() != edges) {
    result.status = DecodeStatus::kHole;
    return result;
  }

  // Keep the corners of the lattice loop, then map to coordinates.
  std::vector<Point> ring;
  bool clipped = false;
  const std::size_t m = loop.size();
  for (std::size_t k = 0; k < m; ++k) {
    const auto [pi, pj] = loop[(k + m - 1) % m];
    const auto [i, j] = loop[k];
    const auto [ni, nj] = loop[(k + 1) % m];
    if ((pi == i && i == ni) || (pj == j && j == nj)) continue;
    Point p{grid.min_x + i * grid.cell_size, grid.min_y + j * grid.cell_size};
    if (p.x > kCoordMax) p.x = kCoordMax, clipped = true;
    if (p.y > kCoordMax) p.y = kCoordMax, clipped = true;
    ring.push_back(p);
  }
  if (clipped) {
    const Limits loose{std::numeric_limits<std::size_t>::max(), std::numeric_limits<std::int64_t>::max()};
    if (!simplify(ring) || check_polygon(RectPolygon{ring}, loose)) {
      result.status = DecodeStatus::kDegenerate;
      return result;
    }
  }
  result.polygon.vertices = std::move(ring);
  if (result.polygon.vertices.size() > limits.max_vertices) {
    result.status = DecodeStatus::kTooManyVertices;
    return result;
  }
  std::int64_t perimeter = 0;
  const auto& vs = result.polygon.vertices;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const Point& a = vs[k];
    const Point& b = vs[(k + 1) % vs.size()];
    perimeter += std::llabs(a.x - b.x) + std::llabs(a.y - b.y);
  }
  if (perimeter > limits.max_perimeter) {
    result.status = DecodeStatus::kTooLong;
    return result;
  }
  result.status = DecodeStatus::kOk;
  return result;
}

Accretion accrete(const CoarseGrid& grid, const lang::BoundScorer& scorer,
                  sandbox::RunControl& control, const Limits& limits) {
  static const auto grid_shape =
      lang::RecordShape::make({"rows", "cols", "mackerels", "sardines", "cell_size"});
  const int rows = grid.rows, cols = grid.cols;
  const bool wants_picked = scorer.uses(3);
  std::array<Value, 4> args;
  args[0] = Value::record(grid_shape, {Value::integer(rows), Value::integer(cols), int_grid(grid.mackerels),
                                       int_grid(grid.sardines), Value::integer(grid.cell_size)});

  std::vector<Value> cell_keys;
  cell_keys.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) cell_keys.push_back(Value::tuple({Value::integer(i), Value::integer(j)}));
  }
  auto key = [&](int i, int j) {
    return cell_keys[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)];
  };

  CellMask picked(static_cast<std::size_t>(rows), std::vector<std::uint8_t>(static_cast<std::size_t>(cols), 0));
  auto is_picked = [&](int i, int j) { return picked[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0; };
  // Sorted (row, col) entries mirroring `picked` for the scorer's set view.
  std::vector<std::pair<int, int>> picked_keys;
  std::vector<std::pair<Value, Value>> picked_entries;
  const Value yes = Value::boolean(true);
  auto mark = [&](int i, int j) {
    picked[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
    if (!wants_picked) return;
    auto pos = std::lower_bound(picked_keys.begin(), picked_keys.end(), std::make_pair(i, j));
    const auto offset = pos - picked_keys.begin();
    picked_keys.insert(pos, {i, j});
    picked_entries.insert(picked_entries.begin() + offset, {key(i, j), yes});
  };
  auto score = [&](int i, int j, bool empty_set) {
    args[1] = Value::integer(i);
    args[2] = Value::integer(j);
    if (wants_picked) {
      args[3] = empty_set ? Value::sorted_map({}) : Value::sorted_map(picked_entries);
    }
    return cell_score(control.score(scorer, args));
  };

  int best_i = -1, best_j = -1;
  double best_score = 0.0;
  for (int i = 0; i < rows; ++i) {
    control.checkpoint();
    for (int j = 0; j < cols; ++j) {
      const double s = score(i, j, true);
      if (best_i < 0 || s > best_score) {
        best_i = i, best_j = j;
        best_score = s;
      }
    }
  }

  // Unpicked region around (i, j) if it does not reach the grid border.
  std::vector<std::uint32_t> visit_mark(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0);
  std::uint32_t visit_epoch = 0;
  auto enclosed_region = [&](int i0, int j0) {
    ++visit_epoch;
    std::vector<std::pair<int, int>> stack{{i0, j0}};
    std::vector<std::pair<int, int>> region;
    while (!stack.empty()) {
      auto [i, j] = stack.back();
      stack.pop_back();
      auto& m = visit_mark[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)];
      if (m == visit_epoch) continue;
      m = visit_epoch;
      region.emplace_back(i, j);
      for (auto [di, dj] : kSteps) {
        const int ni = i + di, nj = j + dj;
        if (ni < 0 || nj < 0 || ni >= rows || nj >= cols) return std::vector<std::pair<int, int>>{};
        if (is_picked(ni, nj)) continue;
        if (visit_mark[static_cast<std::size_t>(ni) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(nj)] ==
            visit_epoch) {
          continue;
        }
        stack.emplace_back(ni, nj);
      }
    }
    return region;
  };

  Accretion out;
  std::int64_t mackerels = 0, sardines = 0, max_val = -1;
  auto take = [&](int i, int j) {
    mark(i, j);
    mackerels += grid.mackerels[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    sardines += grid.sardines[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  };

  std::priority_queue<Queued> pq;
  pq.push({best_score, best_i, best_j});
  while (!pq.empty()) {
    control.checkpoint();
    const Queued top = pq.top();
    pq.pop();
    if (is_picked(top.row, top.col)) continue;
    AccretionStep step{top.row, top.col, 0, 0, false};
    take(top.row, top.col);
    for (auto [di, dj] : kSteps) {
      const int ni = top.row + di, nj = top.col + dj;
      if (ni < 0 || nj < 0 || ni >= rows || nj >= cols) continue;
      if (is_picked(ni, nj)) continue;
      for (auto [ri, rj] : enclosed_region(ni, nj)) {
        take(ri, rj);
        ++step.absorbed;
      }
      if (!is_picked(ni, nj)) pq.push({score(ni, nj, false), ni, nj});
    }
    step.value = std::max<std::int64_t>(0, mackerels - sardines + 1);
    step.valid = decode_to_polygon(picked, grid, limits).ok();
    if (step.valid && step.value >= max_val) {
      max_val = step.value;
      out.best_cells = picked;
      out.found = true;
    }
    out.trace.push_back(step);
  }
  out.best_value = std::max<std::int64_t>(0, max_val);
  return out;
}

std::optional<std::string> check_polygon(const RectPolygon& polygon, const Limits& limits) {
  const auto& v = polygon.vertices;
  const std::size_t n = v.size();
  if (n < 4) return "fewer than 4 vertices";
  if (n > limits.max_vertices) return "too many vertices";
  std::int64_t perimeter = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const Point& a = v[k];
    const Point& b = v[(k + 1) % n];
    const Point& c = v[(k + 2) % n];
    if (a.x < 0 || a.y < 0 || a.x > kCoordMax || a.y > kCoordMax) return "vertex out of bounds";
    const bool h1 = a.y == b.y && a.x != b.x;
    const bool v1 = a.x == b.x && a.y != b.y;
    if (!h1 && !v1) return "edge " + std::to_string(k) + " is not axis-parallel or has zero length";
    const bool h2 = b.y == c.y && b.x != c.x;
    if (h1 == h2) return "edges " + std::to_string(k) + " and " + std::to_string((k + 1) % n) + " do not alternate";
    perimeter += std::llabs(a.x - b.x) + std::llabs(a.y - b.y);
  }
  if (perimeter > limits.max_perimeter) return "perimeter too long";
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 2; b < n; ++b) {
      if (a == 0 && b == n - 1) continue;  // adjacent through the wrap
      if (boxes_touch(v[a], v[(a + 1) % n], v[b], v[(b + 1) % n])) {
        return "edges " + std::to_string(a) + " and " + std::to_string(b) + " intersect";
      }
    }
  }
  return std::nullopt;
}

bool contains(const RectPolygon& polygon, Point p) {
  const auto& v = polygon.vertices;
  const std::size_t n = v.size();
  bool inside = false;
  for (std::size_t k = 0; k < n; ++k) {
    const Point& a = v[k];
    const Point& b = v[(k + 1) % n];
    if (boxes_touch(a, b, p, p)) return true;
    if (a.x == b.x && a.x > p.x) {
      const auto lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
      if (lo <= p.y && p.y < hi) inside = !inside;
    }
  }
  return inside;
}

std::int64_t catch_score(const FishInstance& in, const RectPolygon& polygon) {
  std::int64_t a = 0, b = 0;
  for (const Point& p : in.mackerels) a += contains(polygon, p) ? 1 : 0;
  for (const Point& p : in.sardines) b += contains(polygon, p) ? 1 : 0;
  return std::max<std::int64_t>(0, a - b + 1);
}

std::string generate_instance_text(std::uint64_t seed, const GeneratorParams& params) {
  Rng rng(seed);
  std::set<Point> used;
  std::ostringstream out;
  out << params.n << '\n';
  for (int type = 0; type < 2; ++type) {
    const auto k = static_cast<std::size_t>(rng.between(params.min_clusters, params.max_clusters));
    std::vector<double> cx(k), cy(k), sigma(k), weight(k);
    double total = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      cx[c] = rng.uniform(0.0, static_cast<double>(kCoordMax));
      cy[c] = rng.uniform(0.0, static_cast<double>(kCoordMax));
      sigma[c] = rng.uniform(params.min_sigma, params.max_sigma);
      weight[c] = rng.uniform(0.1, 1.0);
      total += weight[c];
    }
    for (int i = 0; i < params.n; ++i) {
      double u = rng.uniform(0.0, total);
      std::size_t c = 0;
      while (c + 1 < k && u >= weight[c]) u -= weight[c++];
      Point p;
      do {
        p.x = std::llround(cx[c] + sigma[c] * rng.normal());
        p.y = std::llround(cy[c] + sigma[c] * rng.normal());
      } while (p.x < 0 || p.y < 0 || p.x > kCoordMax || p.y > kCoordMax || !used.insert(p).second);
      out << p.x << ' ' << p.y << '\n';
    }
  }
  return out.str();
}

Interval bootstrap_ci(double mean, double std) {
  return {150.0 * mean, 2.0 * std::sqrt(150.0) * std};
}

std::string FishSolution::export_text() const {
  std::ostringstream out;
  if (!polygon) {
    out << "0\n";
    return out.str();
  }
  out << polygon->vertices.size() << '\n';
  for (const Point& p : polygon->vertices) out << p.x << ' ' << p.y << '\n';
  return out.str();
}

std::shared_ptr<const Instance> FishingProblem::parse(std::string_view bytes) const {
  return std::make_shared<FishInstance>(parse_fishing(bytes));
}

std::unique_ptr<Solution> FishingProblem::run_backbone(const Instance& instance,
                                                       const lang::ScoringProgram& program,
                                                       sandbox::RunControl& control) const {
  const auto& in = instance_as<FishInstance>(instance);
  lang::BoundScorer scorer(program, scorer_names());
  auto best = std::make_unique<FishSolution>();
  std::int64_t best_score = -1;
  for (std::int64_t cell : options_.cell_sizes) {
    const CoarseGrid grid = coarsen(in, cell);
    const Accretion acc = accrete(grid, scorer, control, options_.limits);
    if (!acc.found) continue;
    Decoded d = decode_to_polygon(acc.best_cells, grid, options_.limits);
    if (!d.ok()) throw InvalidSolution("accepted cell set failed to decode");
    const std::int64_t s = catch_score(in, d.polygon);
    if (s > best_score) {
      best_score = s;
      best->polygon = std::move(d.polygon);
      best->cell_size = cell;
      best->backbone_value = acc.best_value;
    }
  }
  return best;
}

std::int64_t FishingProblem::evaluate(const Instance& instance, const Solution& solution) const {
  const auto& sol = solution_as<FishSolution>(solution);
  if (!sol.polygon) return 0;
  if (auto err = check_polygon(*sol.polygon, options_.limits)) throw InvalidSolution(*err);
  return catch_score(instance_as<FishInstance>(instance), *sol.polygon);
}

std::string_view FishingProblem::base_scorer() const {
  return R"(fn score(grid, row, col, picked_cells) {
  return grid.mackerels[row][col] - grid.sardines[row][col];
}
)";
}

std::string_view FishingProblem::describe_backbone() const {
  return R"(Task: draw a polygon with axis-parallel edges (at most 1000 vertices,
perimeter at most 400000) that encloses many mackerels and few sardines. The
score is max(0, mackerels - sardines + 1) over fish inside or on the boundary.

Backbone: the bounding box of the mackerels is cut into square cells. The
best-scoring cell seeds a region. Repeatedly the highest-scoring queued cell
is added; unpicked pockets fully enclosed by the region are absorbed; the
free orthogonal neighbours are scored against the current region and queued.
After every addition the region's outline is checked and the best valid one
is kept.

Scorer parameters (declare any subset):
  grid          record {rows, cols, mackerels, sardines, cell_size}; the
                counts are lists of lists indexed [row][col]
  row, col      the cell being scored
  picked_cells  mapping whose keys are the (row, col) tuples already picked
Return a number; higher is better.
)";
}

}  // namespace hcevo::problems::fishing
