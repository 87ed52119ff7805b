#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hcevo/lang/interpreter.hpp"
#include "hcevo/problems/problem.hpp"
#include "hcevo/sandbox/run_control.hpp"

namespace hcevo::problems::fishing {

inline constexpr std::int64_t kCoordMax = 100'000;

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend auto operator<=>(const Point&, const Point&) = default;
};

struct FishInstance : Instance {
  std::int64_t n = 0;  // declared count per type
  // Sorted, duplicates removed.
  std::vector<Point> mackerels;
  std::vector<Point> sardines;
};

struct CoarseGrid {
  int rows = 0;  // cells along x
  int cols = 0;  // cells along y
  std::int64_t cell_size = 1;
  std::int64_t min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  std::vector<std::vector<int>> mackerels;  // [row][col]
  std::vector<std::vector<int>> sardines;
};

struct Limits {
  std::size_t max_vertices = 1000;
  std::int64_t max_perimeter = 400'000;
};

struct RectPolygon {
  std::vector<Point> vertices;
};

enum class DecodeStatus { kOk, kEmpty, kDisconnected, kPinch, kHole, kDegenerate, kTooManyVertices, kTooLong };

std::string_view decode_status_name(DecodeStatus status);

struct Decoded {
  DecodeStatus status = DecodeStatus::kEmpty;
  RectPolygon polygon;
  bool ok() const { return status == DecodeStatus::kOk; }
};

// picked[row][col] over the grid's cells.
using CellMask = std::vector<std::vector<std::uint8_t>>;

struct AccretionStep {
  int row = 0;
  int col = 0;
  int absorbed = 0;  // enclosed cells added along with this one
  std::int64_t value = 0;
  bool valid = false;
};

struct Accretion {
  // Best value over valid polygons; 0 when no polygon was ever valid.
  std::int64_t best_value = 0;
  bool found = false;
  CellMask best_cells;
  std::vector<AccretionStep> trace;
};

struct GeneratorParams {
  int n = 5000;
  int min_clusters = 2;
  int max_clusters = 5;
  double min_sigma = 2000.0;
  double max_sigma = 10000.0;
};

FishInstance parse_fishing(std::string_view text);
// Throws std::invalid_argument when there are no mackerels or cell_size < 1.
CoarseGrid coarsen(const FishInstance& in, std::int64_t cell_size);

std::span<const std::string_view> scorer_names();

Accretion accrete(const CoarseGrid& grid, const lang::BoundScorer& scorer,
                  sandbox::RunControl& control, const Limits& limits = {});
Decoded decode_to_polygon(const CellMask& picked, const CoarseGrid& grid,
                          const Limits& limits = {});

// Empty optional when the polygon is valid, otherwise the first violation.
std::optional<std::string> check_polygon(const RectPolygon& polygon, const Limits& limits = {});
// Boundary points count as inside.
bool contains(const RectPolygon& polygon, Point p);
// max(0, mackerels - sardines + 1) over points inside the polygon.
std::int64_t catch_score(const FishInstance& in, const RectPolygon& polygon);

std::string generate_instance_text(std::uint64_t seed, const GeneratorParams& params = {});

struct Interval {
  double total_mean = 0.0;
  double total_halfwidth = 0.0;
};
Interval bootstrap_ci(double mean, double std);

struct FishSolution : Solution {
  std::optional<RectPolygon> polygon;
  std::int64_t cell_size = 0;
  std::int64_t backbone_value = 0;

  std::string export_text() const override;
};

struct Options {
  std::vector<std::int64_t> cell_sizes{2000};
  Limits limits;
};

class FishingProblem : public Problem {
 public:
  explicit FishingProblem(Options options = {}) : options_(std::move(options)) {}

  std::string_view name() const override { return "fishing_ahc039"; }
  std::shared_ptr<const Instance> parse(std::string_view bytes) const override;
  // Runs the accretion for every configured cell size and keeps the polygon
  // with the best exact score.
  std::unique_ptr<Solution> run_backbone(const Instance& instance,
                                         const lang::ScoringProgram& program,
                                         sandbox::RunControl& control) const override;
  std::int64_t evaluate(const Instance& instance, const Solution& solution) const override;
  std::string_view describe_backbone() const override;
  std::span<const std::string_view> bindings() const override { return scorer_names(); }
  std::string_view base_scorer() const override;

  const Options& options() const { return options_; }

 private:
  Options options_;
};

}  // namespace hcevo::problems::fishing
