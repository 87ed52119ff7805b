#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "hcevo/problems/problem.hpp"

namespace hcevo::problems::toy {

// One-dimensional landscape: the scorer maps each x to a guess y and is
// rewarded for guesses close to a hidden target.
struct ToyInstance : Instance {
  double target = 0.0;
  std::vector<double> xs;
};

struct Guesses : Solution {
  std::vector<double> ys;
  std::string export_text() const override;
};

inline constexpr std::int64_t kToyCeiling = 1'000'000;

ToyInstance parse_toy(std::string_view text);
// kToyCeiling minus the summed rounded error in thousandths.
std::int64_t toy_score(const ToyInstance& in, const Guesses& guesses);

class ToyProblem : public Problem {
 public:
  std::string_view name() const override { return "toy"; }
  std::shared_ptr<const Instance> parse(std::string_view bytes) const override;
  std::unique_ptr<Solution> run_backbone(const Instance& instance,
                                         const lang::ScoringProgram& program,
                                         sandbox::RunControl& control) const override;
  std::int64_t evaluate(const Instance& instance, const Solution& solution) const override;
  std::string_view describe_backbone() const override;
  std::span<const std::string_view> bindings() const override;
  std::string_view base_scorer() const override;
};

}  // namespace hcevo::problems::toy
