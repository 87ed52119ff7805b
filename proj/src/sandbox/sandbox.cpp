#include "hcevo/sandbox/sandbox.hpp"

#include <new>

namespace hcevo::sandbox {

namespace {

std::string_view kind_text(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kScore: return "score";
    case OutcomeKind::kRejected: return "rejected";
    case OutcomeKind::kTimeout: return "timeout";
    case OutcomeKind::kOverMemory: return "over_memory";
  }
  return "?";
}

}  // namespace

nlohmann::json to_json(const Outcome& outcome) {
  nlohmann::json j{{"kind", kind_text(outcome.kind)}};
  if (outcome.kind == OutcomeKind::kScore) j["score"] = outcome.score;
  if (outcome.kind == OutcomeKind::kRejected) {
    j["reason"] = outcome.reason;
    j["detail"] = outcome.detail;
  }
  return j;
}

nlohmann::json to_json(const FitnessReport& report) {
  return {{"program_id", report.program_id},
          {"instance_id", report.instance_id},
          {"outcome", to_json(report.outcome)},
          {"elapsed_seconds", report.elapsed_seconds},
          {"steps_used", report.steps_used}};
}

FitnessReport report_from_json(const nlohmann::json& j) {
  FitnessReport r;
  r.program_id = j.at("program_id").get<std::string>();
  r.instance_id = j.at("instance_id").get<std::string>();
  r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
  r.steps_used = j.at("steps_used").get<std::uint64_t>();
  const auto& o = j.at("outcome");
  const auto kind = o.at("kind").get<std::string>();
  if (kind == "score") {
    r.outcome = Outcome::scored(o.at("score").get<std::int64_t>());
  } else if (kind == "rejected") {
    r.outcome = Outcome::rejected(o.at("reason").get<std::string>(), o.value("detail", ""));
  } else if (kind == "timeout") {
    r.outcome.kind = OutcomeKind::kTimeout;
  } else if (kind == "over_memory") {
    r.outcome.kind = OutcomeKind::kOverMemory;
  } else {
    throw std::invalid_argument("unknown outcome kind " + kind);
  }
  return r;
}

FitnessReport run_candidate(const problems::Problem& problem, const problems::Instance& instance,
                            const lang::ScoringProgram& program, const Budget& budget) {
  FitnessReport report;
  report.program_id = program.id_hex();
  report.instance_id = instance.id();
  RunControl control(budget);
  try {
    report.outcome = Outcome::scored(problems::fitness(problem, instance, program, control));
  } catch (const lang::EvalError& e) {
    if (e.kind() == lang::EvalErrorKind::kValueBudget) {
      report.outcome.kind = OutcomeKind::kOverMemory;
    } else if (e.kind() == lang::EvalErrorKind::kStepBudget) {
      report.outcome = Outcome::rejected("budget-exceeded", e.what());
    } else {
      report.outcome = Outcome::rejected(
          "runtime-error", std::string(lang::eval_error_name(e.kind())) + ": " + e.what());
    }
  } catch (const Rejected& e) {
    report.outcome = Outcome::rejected("invalid-result", e.what());
  } catch (const Timeout&) {
    report.outcome.kind = OutcomeKind::kTimeout;
  } catch (const OverMemory&) {
    report.outcome.kind = OutcomeKind::kOverMemory;
  } catch (const std::bad_alloc&) {
    report.outcome.kind = OutcomeKind::kOverMemory;
  } catch (const problems::InvalidSolution& e) {
    report.outcome = Outcome::rejected("invalid-solution", e.what());
  } catch (const std::exception& e) {
    report.outcome = Outcome::rejected("internal", e.what());
  }
  report.elapsed_seconds = control.elapsed_seconds();
  report.steps_used = control.stats().steps;
  return report;
}

}  // namespace hcevo::sandbox
