#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "hcevo/lang/program.hpp"
#include "hcevo/problems/problem.hpp"
#include "hcevo/sandbox/run_control.hpp"

namespace hcevo::sandbox {

enum class OutcomeKind { kScore, kRejected, kTimeout, kOverMemory };

struct Outcome {
  OutcomeKind kind = OutcomeKind::kRejected;
  std::int64_t score = 0;  // kScore only
  // kRejected only. reason is one of budget-exceeded, runtime-error,
  // invalid-result, invalid-solution, internal; detail is free text.
  std::string reason;
  std::string detail;

  static Outcome scored(std::int64_t s) { return {OutcomeKind::kScore, s, {}, {}}; }
  static Outcome rejected(std::string why, std::string detail = {}) {
    return {OutcomeKind::kRejected, 0, std::move(why), std::move(detail)};
  }

  bool ok() const { return kind == OutcomeKind::kScore; }
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct FitnessReport {
  std::string program_id;
  std::string instance_id;
  Outcome outcome;
  double elapsed_seconds = 0.0;
  std::uint64_t steps_used = 0;
};

nlohmann::json to_json(const Outcome& outcome);
nlohmann::json to_json(const FitnessReport& report);
FitnessReport report_from_json(const nlohmann::json& j);

// Runs backbone, scorer and evaluator for one (program, instance) pair.
// Every failure is folded into the outcome; nothing escapes.
FitnessReport run_candidate(const problems::Problem& problem, const problems::Instance& instance,
                            const lang::ScoringProgram& program, const Budget& budget);

}  // namespace hcevo::sandbox
