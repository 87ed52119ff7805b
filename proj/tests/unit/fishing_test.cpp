#include <cmath>
#include <deque>
#include <random>
#include <set>
#include <string>

#include "doctest.h"
#include "hcevo/lang/interpreter.hpp"
#include "hcevo/lang/program.hpp"
#include "hcevo/problems/fishing_ahc039.hpp"

using namespace hcevo;
using namespace hcevo::problems::fishing;

namespace {

lang::BoundScorer scorer_from(std::string_view source) {
  return lang::BoundScorer(lang::ScoringProgram::parse(source), scorer_names());
}

lang::BoundScorer base_scorer() {
  static const FishingProblem problem;
  return scorer_from(problem.base_scorer());
}

std::string instance_text(const std::vector<Point>& mackerels, const std::vector<Point>& sardines) {
  // The format needs equal counts; pad the shorter list far outside.
  std::vector<Point> a = mackerels, b = sardines;
  std::int64_t pad = 0;
  while (a.size() < b.size()) a.push_back({kCoordMax, kCoordMax - pad++});
  while (b.size() < a.size()) b.push_back({kCoordMax, kCoordMax - pad++});
  std::string t = std::to_string(a.size()) + "\n";
  for (const Point& p : a) t += std::to_string(p.x) + " " + std::to_string(p.y) + "\n";
  for (const Point& p : b) t += std::to_string(p.x) + " " + std::to_string(p.y) + "\n";
  return t;
}

CoarseGrid empty_grid(int rows, int cols, std::int64_t cell = 2000, std::int64_t min_x = 0,
                      std::int64_t min_y = 0) {
  CoarseGrid g;
  g.rows = rows;
  g.cols = cols;
  g.cell_size = cell;
  g.min_x = min_x;
  g.min_y = min_y;
  g.max_x = min_x + rows * cell - 1;
  g.max_y = min_y + cols * cell - 1;
  g.mackerels.assign(static_cast<std::size_t>(rows), std::vector<int>(static_cast<std::size_t>(cols), 0));
  g.sardines = g.mackerels;
  return g;
}

CellMask mask_of(int rows, int cols, const std::vector<std::pair<int, int>>& cells) {
  CellMask m(static_cast<std::size_t>(rows), std::vector<std::uint8_t>(static_cast<std::size_t>(cols), 0));
  for (auto [i, j] : cells) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
  return m;
}

std::int64_t perimeter(const RectPolygon& p) {
  std::int64_t total = 0;
  for (std::size_t k = 0; k < p.vertices.size(); ++k) {
    const Point& a = p.vertices[k];
    const Point& b = p.vertices[(k + 1) % p.vertices.size()];
    total += std::llabs(a.x - b.x) + std::llabs(a.y - b.y);
  }
  return total;
}

std::int64_t area(const RectPolygon& p) {
  std::int64_t twice = 0;
  for (std::size_t k = 0; k < p.vertices.size(); ++k) {
    const Point& a = p.vertices[k];
    const Point& b = p.vertices[(k + 1) % p.vertices.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return std::llabs(twice) / 2;
}

// Unpicked cells that cannot reach the grid border through unpicked cells.
std::size_t enclosed_cells(const CellMask& m) {
  const int rows = static_cast<int>(m.size()), cols = static_cast<int>(m[0].size());
  std::vector<std::vector<bool>> reach(m.size(), std::vector<bool>(m[0].size(), false));
  std::deque<std::pair<int, int>> q;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if ((i == 0 || j == 0 || i == rows - 1 || j == cols - 1) && !m[i][j]) {
        reach[i][j] = true;
        q.emplace_back(i, j);
      }
    }
  }
  while (!q.empty()) {
    auto [i, j] = q.front();
    q.pop_front();
    const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int a = i + di[k], b = j + dj[k];
      if (a < 0 || b < 0 || a >= rows || b >= cols || m[a][b] || reach[a][b]) continue;
      reach[a][b] = true;
      q.emplace_back(a, b);
    }
  }
  std::size_t n = 0;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) n += (!m[i][j] && !reach[i][j]) ? 1 : 0;
  }
  return n;
}

// Random connected cell set grown from one cell.
CellMask random_blob(std::mt19937_64& rng, int rows, int cols) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  CellMask m = mask_of(rows, cols, {{pick(0, rows - 1), pick(0, cols - 1)}});
  const int target = pick(1, rows * cols);
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (m[i][j]) cells.emplace_back(i, j);
    }
  }
  for (int tries = 0; tries < 20 * target && static_cast<int>(cells.size()) < target; ++tries) {
    auto [i, j] = cells[static_cast<std::size_t>(pick(0, static_cast<int>(cells.size()) - 1))];
    const int k = pick(0, 3);
    const int a = i + (k == 0) - (k == 1), b = j + (k == 2) - (k == 3);
    if (a < 0 || b < 0 || a >= rows || b >= cols || m[a][b]) continue;
    m[a][b] = 1;
    cells.emplace_back(a, b);
  }
  return m;
}

// Fish avoid interior cell lines; sardines stay inside the mackerel box.
FishInstance random_fixture(std::mt19937_64& rng, int rows, int cols, std::int64_t cell) {
  const std::int64_t x0 = 1001, y0 = 2003;
  auto pick = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  auto off_line = [&](std::int64_t span) {
    for (;;) {
      const auto o = pick(0, span);
      if (o % cell != 0 || o == 0) return o;
    }
  };
  const std::int64_t wx = rows * cell - 2, wy = cols * cell - 2;
  std::set<Point> mack{{x0, y0}, {x0 + wx, y0 + wy}}, sard;
  const int n = static_cast<int>(pick(10, 80));
  while (static_cast<int>(mack.size()) < n) mack.insert({x0 + off_line(wx), y0 + off_line(wy)});
  while (static_cast<int>(sard.size()) < n) {
    Point p{x0 + off_line(wx), y0 + off_line(wy)};
    if (!mack.count(p)) sard.insert(p);
  }
  return parse_fishing(instance_text({mack.begin(), mack.end()}, {sard.begin(), sard.end()}));
}

}  // namespace

TEST_CASE("fishing parse: examples") {
  auto in = parse_fishing("1\n0 0\n5 5\n");
  CHECK(in.n == 1);
  CHECK(in.mackerels == std::vector<Point>{{0, 0}});
  CHECK(in.sardines == std::vector<Point>{{5, 5}});

  auto dup = parse_fishing("3\n1 1\n1 1\n2 2\n5 5\n6 6\n5 5\n");
  CHECK(dup.mackerels.size() == 2);
  CHECK(dup.sardines.size() == 2);

  CHECK_THROWS_AS(parse_fishing("1\n100001 0\n5 5\n"), problems::InputError);
  CHECK_THROWS_AS(parse_fishing("1\n-1 0\n5 5\n"), problems::InputError);
  CHECK_THROWS_AS(parse_fishing("2\n1 0\n5 5\n"), problems::InputError);
  CHECK_THROWS_AS(parse_fishing("1\n1 0 3\n5 5\n"), problems::InputError);
}

TEST_CASE("fishing coarsen: examples") {
  auto in = parse_fishing("2\n0 0\n1999 1999\n3000 10\n50 50\n");
  auto g = coarsen(in, 2000);
  CHECK(g.rows == 1);
  CHECK(g.cols == 1);
  CHECK(g.mackerels[0][0] == 2);
  // (3000, 10) lies outside the mackerel box.
  CHECK(g.sardines[0][0] == 1);

  auto wide = parse_fishing("2\n0 0\n5000 0\n1 1\n2 2\n");
  auto w = coarsen(wide, 2000);
  CHECK(w.rows == 3);
  CHECK(w.cols == 1);
  CHECK(w.mackerels[2][0] == 1);

  CHECK_THROWS_AS(coarsen(wide, 0), std::invalid_argument);
}

TEST_CASE("fishing coarsen: every in-window fish counted once") {
  std::mt19937_64 rng(39);
  for (int trial = 0; trial < 50; ++trial) {
    auto in = parse_fishing(generate_instance_text(rng(), {.n = 200}));
    for (std::int64_t cell : {1500, 2000, 3000, 4000}) {
      auto g = coarsen(in, cell);
      std::int64_t m = 0, s = 0;
      for (int i = 0; i < g.rows; ++i) {
        for (int j = 0; j < g.cols; ++j) {
          m += g.mackerels[i][j];
          s += g.sardines[i][j];
        }
      }
      std::int64_t in_box = 0;
      for (const Point& p : in.sardines) {
        in_box += (p.x >= g.min_x && p.x <= g.max_x && p.y >= g.min_y && p.y <= g.max_y) ? 1 : 0;
      }
      CHECK(m == static_cast<std::int64_t>(in.mackerels.size()));
      CHECK(s == in_box);
    }
  }
}

TEST_CASE("fishing accrete: single cell") {
  auto in = parse_fishing(instance_text({{100, 100}, {200, 200}, {300, 300}}, {{150, 150}}));
  auto g = coarsen(in, 2000);
  REQUIRE(g.rows == 1);
  sandbox::RunControl control;
  auto acc = accrete(g, base_scorer(), control);
  CHECK(acc.found);
  CHECK(acc.best_value == 3);
  REQUIRE(acc.trace.size() == 1);
  CHECK(acc.trace[0].valid);
}

TEST_CASE("fishing accrete: value never negative") {
  std::vector<Point> sardines;
  for (int k = 0; k < 20; ++k) sardines.push_back({100 + k, 100 + k});
  auto in = parse_fishing(instance_text({{100, 150}, {3000, 3000}}, sardines));
  auto g = coarsen(in, 2000);
  sandbox::RunControl control;
  auto acc = accrete(g, base_scorer(), control);
  CHECK(acc.best_value >= 0);
  for (const auto& step : acc.trace) CHECK(step.value >= 0);
}

TEST_CASE("fishing accrete: enclosed hole is absorbed") {
  // 3x3 cells; the ring holds 10 mackerels per cell, the centre 5 sardines.
  std::vector<Point> mack, sard;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      for (int k = 0; k < 10; ++k) {
        const Point p{100 + r * 2000 + 10 * k + 1, 100 + c * 2000 + 7 * k + 1};
        if (r == 1 && c == 1) {
          if (k < 5) sard.push_back(p);
        } else {
          mack.push_back(p);
        }
      }
    }
  }
  mack.push_back({100, 100});
  auto in = parse_fishing(instance_text(mack, sard));
  auto g = coarsen(in, 2000);
  REQUIRE(g.rows == 3);
  REQUIRE(g.cols == 3);
  sandbox::RunControl control;
  auto acc = accrete(g, base_scorer(), control);
  // The centre is enclosed once the four edge cells are in, before the corners.
  REQUIRE(acc.trace.size() == 8);
  int absorbed = 0;
  for (const auto& step : acc.trace) absorbed += step.absorbed;
  CHECK(absorbed == 1);
  CHECK(acc.trace.back().value == 81 - 5 + 1);
  CHECK(acc.best_value == 77);
  CHECK(acc.best_cells == mask_of(3, 3, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}}));
  auto d = decode_to_polygon(acc.best_cells, g);
  REQUIRE(d.ok());
  CHECK(catch_score(in, d.polygon) == 77);
}

TEST_CASE("fishing accrete: absorption matches an enclosure oracle") {
  std::mt19937_64 rng(4);
  const char* programs[] = {
      "fn score(grid, row, col) { return grid.mackerels[row][col] - grid.sardines[row][col]; }",
      "fn score(row, col) { return (row * 7 + col * 13) % 5; }",
      "fn score(row, col, picked_cells) { return len(picked_cells) % 3 - abs(row - col); }",
  };
  for (const char* source : programs) {
    auto scorer = scorer_from(source);
    for (int trial = 0; trial < 20; ++trial) {
      auto in = parse_fishing(generate_instance_text(rng(), {.n = 150}));
      auto g = coarsen(in, 8000);
      sandbox::RunControl control;
      auto acc = accrete(g, scorer, control);
      CellMask m = mask_of(g.rows, g.cols, {});
      for (const auto& step : acc.trace) {
        CHECK_FALSE(m[step.row][step.col]);
        m[step.row][step.col] = 1;
        CHECK(enclosed_cells(m) == static_cast<std::size_t>(step.absorbed));
        // Fill the enclosed cells as the backbone did.
        CellMask outside = m;
        const std::size_t before = enclosed_cells(m);
        if (before > 0) {
          for (int i = 0; i < g.rows; ++i) {
            for (int j = 0; j < g.cols; ++j) {
              if (m[i][j]) continue;
              outside[i][j] = 1;
              const bool enclosed = enclosed_cells(outside) == before - 1;
              outside[i][j] = 0;
              if (enclosed) m[i][j] = 1;
            }
          }
        }
        CHECK(enclosed_cells(m) == 0);
      }
      if (acc.found) CHECK(decode_to_polygon(acc.best_cells, g).ok());
    }
  }
}

TEST_CASE("fishing decode: shapes") {
  auto g = empty_grid(3, 3);
  SUBCASE("single cell") {
    auto d = decode_to_polygon(mask_of(3, 3, {{0, 0}}), g);
    REQUIRE(d.ok());
    CHECK(d.polygon.vertices.size() == 4);
    CHECK(perimeter(d.polygon) == 8000);
    CHECK(std::set<Point>(d.polygon.vertices.begin(), d.polygon.vertices.end()) ==
          std::set<Point>{{0, 0}, {2000, 0}, {2000, 2000}, {0, 2000}});
  }
  SUBCASE("two cells") {
    auto d = decode_to_polygon(mask_of(3, 3, {{0, 0}, {1, 0}}), g);
    REQUIRE(d.ok());
    CHECK(d.polygon.vertices.size() == 4);
    CHECK(std::set<Point>(d.polygon.vertices.begin(), d.polygon.vertices.end()) ==
          std::set<Point>{{0, 0}, {4000, 0}, {4000, 2000}, {0, 2000}});
  }
  SUBCASE("L tromino") {
    auto d = decode_to_polygon(mask_of(3, 3, {{0, 0}, {1, 0}, {0, 1}}), g);
    REQUIRE(d.ok());
    CHECK(d.polygon.vertices.size() == 6);
    CHECK(perimeter(d.polygon) == 16000);
    CHECK(area(d.polygon) == 3 * 2000 * 2000);
  }
  SUBCASE("failures") {
    CHECK(decode_to_polygon(mask_of(3, 3, {}), g).status == DecodeStatus::kEmpty);
    CHECK(decode_to_polygon(mask_of(3, 3, {{0, 0}, {2, 2}}), g).status == DecodeStatus::kDisconnected);
    CHECK(decode_to_polygon(mask_of(3, 3, {{0, 0}, {1, 1}, {0, 1}, {2, 1}, {2, 2}}), g).status ==
          DecodeStatus::kOk);
    CHECK(decode_to_polygon(mask_of(3, 3, {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 0}, {2, 1}}), g).status ==
          DecodeStatus::kOk);
    CHECK(decode_to_polygon(mask_of(3, 3, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}), g)
              .status == DecodeStatus::kPinch);
    CHECK(decode_to_polygon(mask_of(3, 3, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}, {2, 2}}), g)
              .status == DecodeStatus::kHole);
    const Limits few{4, 400'000};
    CHECK(decode_to_polygon(mask_of(3, 3, {{0, 0}, {1, 0}, {0, 1}}), g, few).status ==
          DecodeStatus::kTooManyVertices);
    const Limits short_rope{1000, 15'999};
    CHECK(decode_to_polygon(mask_of(3, 3, {{0, 0}, {1, 0}, {0, 1}}), g, short_rope).status ==
          DecodeStatus::kTooLong);
  }
  SUBCASE("clipped at the coordinate limit") {
    auto edge = empty_grid(2, 1, 2000, 98'000, 0);
    auto d = decode_to_polygon(mask_of(2, 1, {{0, 0}, {1, 0}}), edge);
    REQUIRE(d.ok());
    CHECK(std::set<Point>(d.polygon.vertices.begin(), d.polygon.vertices.end()) ==
          std::set<Point>{{98'000, 0}, {100'000, 0}, {100'000, 2000}, {98'000, 2000}});
    auto lost = decode_to_polygon(mask_of(2, 1, {{1, 0}}), edge);
    CHECK(lost.status == DecodeStatus::kDegenerate);
  }
}

TEST_CASE("fishing decode: valid polygons match their cells") {
  std::mt19937_64 rng(1);
  int ok = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int rows = std::uniform_int_distribution<int>(1, 7)(rng);
    const int cols = std::uniform_int_distribution<int>(1, 7)(rng);
    auto g = empty_grid(rows, cols, 1000, 500, 700);
    auto m = random_blob(rng, rows, cols);
    auto d = decode_to_polygon(m, g);
    std::size_t cells = 0;
    for (const auto& row : m) {
      for (auto c : row) cells += c;
    }
    if (enclosed_cells(m) > 0) CHECK(d.status != DecodeStatus::kOk);
    if (!d.ok()) continue;
    ++ok;
    CHECK_FALSE(check_polygon(d.polygon).has_value());
    CHECK(area(d.polygon) == static_cast<std::int64_t>(cells) * 1000 * 1000);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        const Point centre{500 + i * 1000 + 500, 700 + j * 1000 + 500};
        CHECK(contains(d.polygon, centre) == (m[i][j] != 0));
      }
    }
  }
  CHECK(ok > 100);
}

TEST_CASE("fishing check_polygon and contains") {
  RectPolygon square{{{0, 0}, {10, 0}, {10, 10}, {0, 10}}};
  CHECK_FALSE(check_polygon(square).has_value());
  CHECK(contains(square, {5, 5}));
  CHECK(contains(square, {0, 5}));
  CHECK(contains(square, {10, 10}));
  CHECK_FALSE(contains(square, {11, 5}));
  CHECK_FALSE(contains(square, {5, -1}));

  RectPolygon diagonal{{{0, 0}, {10, 10}, {0, 10}, {0, 5}}};
  CHECK(check_polygon(diagonal).has_value());
  RectPolygon outside{{{0, 0}, {100'001, 0}, {100'001, 10}, {0, 10}}};
  CHECK(check_polygon(outside).has_value());
  // Bow tie made of axis-parallel edges that cross.
  RectPolygon crossing{{{0, 0}, {10, 0}, {10, 10}, {5, 10}, {5, -5}, {0, -5}}};
  CHECK(check_polygon(crossing).has_value());
  // Two edges touching at a point.
  RectPolygon touching{{{0, 0}, {4, 0}, {4, 2}, {2, 2}, {2, 4}, {6, 4}, {6, 2}, {4, 2}, {4, 6}, {0, 6}}};
  CHECK(check_polygon(touching).has_value());
  CHECK(check_polygon(RectPolygon{{{0, 0}, {10, 0}, {10, 10}}}).has_value());
  CHECK(check_polygon(square, Limits{1000, 39}).has_value());
}

TEST_CASE("fishing catch_score: equals cell bookkeeping away from cell lines") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int rows = std::uniform_int_distribution<int>(1, 5)(rng);
    const int cols = std::uniform_int_distribution<int>(1, 5)(rng);
    auto in = random_fixture(rng, rows, cols, 2000);
    auto g = coarsen(in, 2000);
    REQUIRE(g.rows == rows);
    REQUIRE(g.cols == cols);
    auto m = random_blob(rng, rows, cols);
    auto d = decode_to_polygon(m, g);
    if (!d.ok()) continue;
    std::int64_t cell_value = 0;
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        if (m[i][j]) cell_value += g.mackerels[i][j] - g.sardines[i][j];
      }
    }
    CHECK(catch_score(in, d.polygon) == std::max<std::int64_t>(0, cell_value + 1));
  }
}

TEST_CASE("fishing backbone: best value agrees with the exact score") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto in = random_fixture(rng, 4, 4, 2000);
    auto g = coarsen(in, 2000);
    sandbox::RunControl control;
    auto acc = accrete(g, base_scorer(), control);
    REQUIRE(acc.found);
    auto d = decode_to_polygon(acc.best_cells, g);
    REQUIRE(d.ok());
    CHECK(catch_score(in, d.polygon) == acc.best_value);
  }
}

TEST_CASE("fishing backbone: scorer results must be numbers") {
  auto in = parse_fishing(instance_text({{100, 100}}, {{150, 150}}));
  auto g = coarsen(in, 2000);
  sandbox::RunControl control;
  CHECK_THROWS_AS(accrete(g, scorer_from("fn score() { return none; }"), control), sandbox::Rejected);
}

TEST_CASE("fishing problem: run, export and evaluate") {
  FishingProblem problem({.cell_sizes = {1500, 2000, 3000, 4000}, .limits = {}});
  auto inst = problem.parse(generate_instance_text(17, {.n = 500}));
  auto prog = lang::ScoringProgram::parse(problem.base_scorer());
  sandbox::RunControl control;
  auto sol = problem.run_backbone(*inst, prog, control);
  const auto& fs = problems::solution_as<FishSolution>(*sol);
  REQUIRE(fs.polygon.has_value());
  CHECK_FALSE(check_polygon(*fs.polygon).has_value());
  const auto score = problem.evaluate(*inst, *sol);
  CHECK(score >= 1);
  // The sweep keeps the best of the single-size runs.
  for (std::int64_t cell : {1500, 2000, 3000, 4000}) {
    FishingProblem single({.cell_sizes = {cell}, .limits = {}});
    auto s = single.run_backbone(*inst, prog, control);
    CHECK(single.evaluate(*inst, *s) <= score);
  }
  const auto text = sol->export_text();
  CHECK(text.substr(0, text.find('\n')) == std::to_string(fs.polygon->vertices.size()));
}

TEST_CASE("fishing generator: determinism and shape") {
  const auto a = generate_instance_text(5, {.n = 300});
  CHECK(a == generate_instance_text(5, {.n = 300}));
  CHECK(a != generate_instance_text(6, {.n = 300}));
  auto in = parse_fishing(a);
  CHECK(in.n == 300);
  CHECK(in.mackerels.size() == 300);
  CHECK(in.sardines.size() == 300);

  GeneratorParams tight{.n = 60, .min_clusters = 1, .max_clusters = 1, .min_sigma = 5.0, .max_sigma = 5.0};
  auto t = parse_fishing(generate_instance_text(9, tight));
  std::int64_t lo = kCoordMax, hi = 0;
  for (const Point& p : t.mackerels) {
    lo = std::min(lo, p.x);
    hi = std::max(hi, p.x);
  }
  CHECK(hi - lo < 100);
}

TEST_CASE("fishing bootstrap_ci") {
  auto ci = bootstrap_ci(3521.9, 424.4);
  CHECK(ci.total_mean == doctest::Approx(528285.0));
  CHECK(ci.total_halfwidth == doctest::Approx(10395.6).epsilon(1e-5));
  CHECK(std::abs(ci.total_mean - 528285.4) / 528285.4 < 5e-4);
  CHECK(std::abs(ci.total_halfwidth - 10396.6) / 10396.6 < 5e-4);
  auto zero = bootstrap_ci(0, 0);
  CHECK(zero.total_mean == 0.0);
  CHECK(zero.total_halfwidth == 0.0);
  auto one = bootstrap_ci(1, 1);
  CHECK(one.total_mean == 150.0);
  CHECK(one.total_halfwidth == doctest::Approx(24.494897));
}
