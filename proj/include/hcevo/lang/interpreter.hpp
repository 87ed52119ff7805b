#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hcevo/lang/program.hpp"
#include "hcevo/lang/value.hpp"

namespace hcevo::lang {

// Per-invocation resource limits.
struct Limits {
  std::uint64_t step_budget = 10'000'000;
  std::uint64_t value_budget = 1'000'000;
};

// Accumulated usage across invocations.
struct EvalStats {
  std::uint64_t steps = 0;
  std::uint64_t values = 0;
  std::uint64_t calls = 0;
};

class EvalContext {
 public:
  EvalContext() = default;
  explicit EvalContext(Limits limits) : limits_(limits) {}

  EvalContext& bind(std::string name, Value value);
  const Value* find(std::string_view name) const;

  const Limits& limits() const { return limits_; }
  void set_limits(Limits limits) { limits_ = limits; }
  const std::vector<std::pair<std::string, Value>>& bindings() const { return bindings_; }

 private:
  std::vector<std::pair<std::string, Value>> bindings_;
  Limits limits_;
};

// Runs `program` with its parameters taken from `ctx` by name. Throws
// EvalError on any runtime failure; never modifies `ctx`.
Value evaluate(const ScoringProgram& program, const EvalContext& ctx,
               EvalStats* stats = nullptr);

// A program whose parameters have been matched once against the fixed list of
// names a backbone exposes, so repeated calls skip the name lookup. A program
// may declare any subset of the exposed names, in any order.
class BoundScorer {
 public:
  // Throws EvalError(kMissingBinding) if a parameter is not exposed.
  BoundScorer(ScoringProgram program, std::span<const std::string_view> names);

  Value operator()(std::span<const Value> args, const Limits& limits,
                   EvalStats* stats = nullptr) const;

  const ScoringProgram& program() const { return program_; }
  // Whether the exposed name at `index` is a parameter of the program, so
  // callers can skip building bindings nobody reads.
  bool uses(std::size_t index) const;

 private:
  ScoringProgram program_;
  std::vector<std::size_t> arg_of_param_;
};

}  // namespace hcevo::lang
