#include "hcevo/evolution/evolve.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

namespace hcevo::evolution {

namespace {

struct Job {
  std::size_t island = 0;
  std::vector<lang::ScoringProgram> parents;
  int parent_chain = 0;
  std::uint64_t seed = 0;
  // Filled by a worker.
  std::vector<std::optional<lang::ScoringProgram>> programs;
  std::vector<sandbox::Outcome> outcomes;
  std::exception_ptr error;
};

void run_job(Job& job, const problems::Problem& problem,
             std::span<const std::shared_ptr<const problems::Instance>> instances,
             const EvolutionConfig& cfg, const MutationProvider& provider, const sandbox::Budget& budget) {
  try {
    const auto texts = provider.propose(problem.describe_backbone(), job.parents, cfg.samples_per_prompt, job.seed);
    if (texts.empty()) throw ProviderUnavailable(std::string(provider.name()) + ": no candidates returned");
    for (const auto& text : texts) {
      try {
        auto program = lang::ScoringProgram::parse(text);
        job.outcomes.push_back(multi_fitness(problem, instances, program, budget));
        job.programs.emplace_back(std::move(program));
      } catch (const lang::ParseError& e) {
        job.programs.emplace_back(std::nullopt);
        job.outcomes.push_back(sandbox::Outcome::rejected("parse-error", e.what()));
      }
    }
  } catch (...) {
    job.error = std::current_exception();
  }
}

void run_batch(std::vector<Job>& jobs, int workers, const problems::Problem& problem,
               std::span<const std::shared_ptr<const problems::Instance>> instances,
               const EvolutionConfig& cfg, const MutationProvider& provider, const sandbox::Budget& budget) {
  if (workers <= 1 || jobs.size() <= 1) {
    for (auto& job : jobs) run_job(job, problem, instances, cfg, provider, budget);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(workers), jobs.size());
  for (std::size_t w = 0; w < n; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs.size(); i = next++) {
        run_job(jobs[i], problem, instances, cfg, provider, budget);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

void EvolutionConfig::validate() const {
  if (n_islands < 1) throw std::invalid_argument("n_islands must be at least 1");
  if (island_capacity < 1) throw std::invalid_argument("island_capacity must be at least 1");
  if (best_shot_k < 1 || best_shot_k > island_capacity) {
    throw std::invalid_argument("best_shot_k must be in [1, island_capacity]");
  }
  if (!(reset_fraction > 0.0 && reset_fraction < 1.0)) throw std::invalid_argument("reset_fraction must be in (0, 1)");
  if (reset_period_evals < 1) throw std::invalid_argument("reset_period_evals must be at least 1");
  if (samples_per_prompt < 1) throw std::invalid_argument("samples_per_prompt must be at least 1");
  if (workers < 1) throw std::invalid_argument("workers must be at least 1");
  if (stop.max_wall_clock && !(*stop.max_wall_clock >= 0.0)) {
    throw std::invalid_argument("stop.max_wall_clock must be non-negative");
  }
}

nlohmann::json to_json(const EvolutionConfig& cfg) {
  nlohmann::json stop = nlohmann::json::object();
  if (cfg.stop.max_evaluations) stop["max_evaluations"] = *cfg.stop.max_evaluations;
  if (cfg.stop.max_wall_clock) stop["max_wall_clock"] = *cfg.stop.max_wall_clock;
  if (cfg.stop.target_fitness) stop["target_fitness"] = *cfg.stop.target_fitness;
  return {{"n_islands", cfg.n_islands},
          {"island_capacity", cfg.island_capacity},
          {"best_shot_k", cfg.best_shot_k},
          {"reset_period_evals", cfg.reset_period_evals},
          {"reset_fraction", cfg.reset_fraction},
          {"rng_seed", cfg.rng_seed},
          {"samples_per_prompt", cfg.samples_per_prompt},
          {"workers", cfg.workers},
          {"stop", stop}};
}

EvolutionConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("evolution config must be an object");
  EvolutionConfig cfg;
  try {
    cfg.n_islands = j.value("n_islands", cfg.n_islands);
    cfg.island_capacity = j.value("island_capacity", cfg.island_capacity);
    cfg.best_shot_k = j.value("best_shot_k", cfg.best_shot_k);
    cfg.reset_period_evals = j.value("reset_period_evals", cfg.reset_period_evals);
    cfg.reset_fraction = j.value("reset_fraction", cfg.reset_fraction);
    cfg.rng_seed = j.value("rng_seed", cfg.rng_seed);
    cfg.samples_per_prompt = j.value("samples_per_prompt", cfg.samples_per_prompt);
    cfg.workers = j.value("workers", cfg.workers);
    if (j.contains("stop")) {
      const auto& s = j.at("stop");
      if (s.contains("max_evaluations")) cfg.stop.max_evaluations = s.at("max_evaluations").get<std::uint64_t>();
      if (s.contains("max_wall_clock")) cfg.stop.max_wall_clock = s.at("max_wall_clock").get<double>();
      if (s.contains("target_fitness")) cfg.stop.target_fitness = s.at("target_fitness").get<std::int64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("evolution config: " + std::string(e.what()));
  }
  cfg.validate();
  return cfg;
}

sandbox::Outcome multi_fitness(const problems::Problem& problem,
                               std::span<const std::shared_ptr<const problems::Instance>> instances,
                               const lang::ScoringProgram& program, const sandbox::Budget& budget) {
  std::int64_t total = 0;
  for (const auto& instance : instances) {
    auto report = sandbox::run_candidate(problem, *instance, program, budget);
    if (!report.outcome.ok()) return report.outcome;
    total += report.outcome.score;
  }
  return sandbox::Outcome::scored(total);
}

EvolutionResult evolve(const problems::Problem& problem,
                       std::span<const std::shared_ptr<const problems::Instance>> instances,
                       const lang::ScoringProgram& seed, const EvolutionConfig& cfg,
                       const MutationProvider& provider, const sandbox::Budget& budget,
                       const ProgressFn& progress) {
  cfg.validate();
  budget.validate();
  if (instances.empty()) throw std::invalid_argument("evolve needs at least one instance");
  if (!cfg.stop.max_evaluations && !cfg.stop.max_wall_clock && !cfg.stop.target_fitness) {
    throw std::invalid_argument("evolve needs at least one stop rule");
  }
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  const auto seed_outcome = multi_fitness(problem, instances, seed, budget);
  if (!seed_outcome.ok()) {
    throw InvalidSeed("seed program does not score: " + seed_outcome.reason +
                      (seed_outcome.detail.empty() ? "" : " (" + seed_outcome.detail + ")"));
  }
  EvolutionResult result;
  result.seed = Candidate{seed, seed_outcome.score, 0, 0};
  result.best = result.seed;

  std::vector<Island> islands;
  for (int i = 0; i < cfg.n_islands; ++i) {
    islands.emplace_back(i, cfg.island_capacity);
    islands.back().admit(result.seed);
  }
  Rng rng(cfg.rng_seed);
  std::uint64_t counter = 0;
  auto done = [&] {
    if (cfg.stop.max_evaluations && counter >= *cfg.stop.max_evaluations) return true;
    if (cfg.stop.target_fitness && result.best.fitness >= *cfg.stop.target_fitness) return true;
    if (cfg.stop.max_wall_clock && elapsed() >= *cfg.stop.max_wall_clock) return true;
    return false;
  };

  while (!done()) {
    std::vector<Job> jobs(static_cast<std::size_t>(cfg.workers));
    for (auto& job : jobs) {
      job.island = rng.below(islands.size());
      const auto chosen = select_parent_candidates(islands[job.island], cfg.best_shot_k);
      for (const Candidate* c : chosen) job.parents.push_back(c->program);
      job.parent_chain = chosen.back()->chain_length;
      job.seed = rng.next_u64();
    }
    run_batch(jobs, cfg.workers, problem, instances, cfg, provider, budget);
    for (auto& job : jobs) {
      if (job.error) std::rethrow_exception(job.error);
      for (std::size_t i = 0; i < job.outcomes.size() && !done(); ++i) {
        ++counter;
        const Candidate* admitted = nullptr;
        Candidate child;
        if (job.outcomes[i].ok()) {
          child = Candidate{*job.programs[i], job.outcomes[i].score, job.parent_chain + 1, counter};
          islands[job.island].admit(child);
          if (better(child, result.best)) result.best = child;
          admitted = &child;
        } else {
          ++result.rejected;
        }
        HistoryEntry entry{counter, result.best.fitness};
        result.history.push_back(entry);
        if (progress) progress(entry, admitted);
        if (counter % cfg.reset_period_evals == 0) {
          if (!reset_islands(islands, cfg.reset_fraction, rng).empty()) ++result.resets;
        }
      }
    }
  }
  result.evaluations = counter;
  result.wall_seconds = elapsed();
  return result;
}

void write_history_csv(std::ostream& out, std::span<const HistoryEntry> history) {
  out << "eval_counter,best_fitness\n";
  for (const auto& h : history) out << h.eval_counter << ',' << h.best_fitness << '\n';
}

std::vector<HistoryEntry> read_history_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "eval_counter,best_fitness") {
    throw std::invalid_argument("history csv: expected header eval_counter,best_fitness");
  }
  std::vector<HistoryEntry> out;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("missing comma");
      std::size_t used = 0;
      HistoryEntry h;
      h.eval_counter = std::stoull(line.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("bad counter");
      const std::string rest = line.substr(comma + 1);
      h.best_fitness = std::stoll(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("bad fitness");
      out.push_back(h);
    } catch (const std::exception&) {
      throw std::invalid_argument("history csv: malformed row " + std::to_string(row));
    }
  }
  return out;
}

}  // namespace hcevo::evolution
