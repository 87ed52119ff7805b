#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "hcevo/lang/interpreter.hpp"

namespace hcevo::sandbox {

struct Budget {
  double wall_clock_seconds = 1800.0;
  std::uint64_t memory_bytes = 10ULL << 30;
  std::uint64_t scorer_step_budget = 10'000'000;
  std::uint64_t scorer_value_budget = 1'000'000;

  // Throws std::invalid_argument unless every limit is strictly positive.
  void validate() const;
};

class Timeout : public std::runtime_error {
 public:
  Timeout() : std::runtime_error("wall clock budget exhausted") {}
};

class OverMemory : public std::runtime_error {
 public:
  OverMemory() : std::runtime_error("memory budget exhausted") {}
};

// A backbone refuses a scorer result (wrong type, invalid duration, ...).
class Rejected : public std::runtime_error {
 public:
  explicit Rejected(const std::string& reason) : std::runtime_error(reason) {}
};

// Resident set size of this process, 0 if unknown.
std::uint64_t resident_bytes();

// Per-run limits and accounting handed to a backbone. Backbones call
// checkpoint() once per outer iteration and route every scorer call through
// score().
class RunControl {
 public:
  RunControl() : RunControl(Budget{}) {}
  explicit RunControl(const Budget& budget);

  // Throws Timeout or OverMemory.
  void checkpoint();

  lang::Value score(const lang::BoundScorer& scorer, std::span<const lang::Value> args);

  const lang::EvalStats& stats() const { return stats_; }
  double elapsed_seconds() const;

 private:
  using Clock = std::chrono::steady_clock;

  Budget budget_;
  lang::Limits limits_;
  Clock::time_point start_;
  Clock::time_point deadline_;
  lang::EvalStats stats_;
  std::uint32_t ticks_ = 0;
};

}  // namespace hcevo::sandbox
