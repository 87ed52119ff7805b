#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "hcevo/evolution/island.hpp"
#include "hcevo/evolution/provider.hpp"
#include "hcevo/problems/problem.hpp"
#include "hcevo/sandbox/sandbox.hpp"

namespace hcevo::evolution {

class InvalidSeed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StopRule {
  std::optional<std::uint64_t> max_evaluations;
  // Whole campaign, seconds.
  std::optional<double> max_wall_clock;
  std::optional<std::int64_t> target_fitness;
};

struct EvolutionConfig {
  int n_islands = 10;
  std::size_t island_capacity = 64;
  std::size_t best_shot_k = 2;
  std::uint64_t reset_period_evals = 4000;
  double reset_fraction = 0.5;
  std::uint64_t rng_seed = 0;
  // Programs requested per provider call.
  std::size_t samples_per_prompt = 1;
  // Concurrent evaluations; results are admitted in submission order, so the
  // run does not depend on this value unless a wall clock limit fires.
  int workers = 1;
  StopRule stop;

  // Throws std::invalid_argument.
  void validate() const;
};

nlohmann::json to_json(const EvolutionConfig& cfg);
// Missing keys keep their defaults. Throws std::invalid_argument.
EvolutionConfig config_from_json(const nlohmann::json& j);

struct HistoryEntry {
  std::uint64_t eval_counter = 0;
  std::int64_t best_fitness = 0;
  friend bool operator==(const HistoryEntry&, const HistoryEntry&) = default;
};

struct EvolutionResult {
  Candidate seed;
  Candidate best;
  // One entry per completed evaluation after the seed.
  std::vector<HistoryEntry> history;
  std::uint64_t evaluations = 0;
  std::uint64_t rejected = 0;
  std::uint64_t resets = 0;
  double wall_seconds = 0.0;
};

// Sum of per-instance scores; any failing instance fails the whole.
sandbox::Outcome multi_fitness(const problems::Problem& problem,
                               std::span<const std::shared_ptr<const problems::Instance>> instances,
                               const lang::ScoringProgram& program, const sandbox::Budget& budget);

// Called after each admitted evaluation from the controller thread.
using ProgressFn = std::function<void(const HistoryEntry&, const Candidate* admitted)>;

// Throws InvalidSeed, ProviderUnavailable, std::invalid_argument.
EvolutionResult evolve(const problems::Problem& problem,
                       std::span<const std::shared_ptr<const problems::Instance>> instances,
                       const lang::ScoringProgram& seed, const EvolutionConfig& cfg,
                       const MutationProvider& provider, const sandbox::Budget& budget,
                       const ProgressFn& progress = {});

void write_history_csv(std::ostream& out, std::span<const HistoryEntry> history);
// Throws std::invalid_argument on a malformed file.
std::vector<HistoryEntry> read_history_csv(std::istream& in);

}  // namespace hcevo::evolution
