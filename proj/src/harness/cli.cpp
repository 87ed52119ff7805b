#include "hcevo/harness/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "hcevo/evolution/evolve.hpp"
#include "hcevo/harness/leaderboard.hpp"
#include "hcevo/harness/run_config.hpp"
#include "hcevo/problems/fishing_ahc039.hpp"
#include "hcevo/problems/registry.hpp"
#include "hcevo/sandbox/sandbox.hpp"

namespace hcevo::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kContestSeconds = 7200.0;

struct Failure : std::runtime_error {
  Failure(std::string type, const std::string& message) : std::runtime_error(message), type(std::move(type)) {}
  std::string type;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Failure("io", "cannot write " + path.string());
  f << text;
  if (!f) throw Failure("io", "cannot write " + path.string());
}

lang::ScoringProgram load_program(const problems::Problem& problem, const std::string& path) {
  if (path.empty()) return lang::ScoringProgram::parse(problem.base_scorer());
  return lang::ScoringProgram::parse(problems::read_file(path));
}

struct EvalArgs {
  std::string problem, instance, program, options = "{}", export_path;
  std::vector<std::int64_t> cell_sizes;
  double seconds = sandbox::Budget{}.wall_clock_seconds;
  std::uint64_t steps = sandbox::Budget{}.scorer_step_budget;
};

void cmd_eval(const EvalArgs& a, std::ostream& out) {
  json options = json::parse(a.options);
  if (!a.cell_sizes.empty()) options["cell_sizes"] = a.cell_sizes;
  auto problem = problems::make_problem(a.problem, options);
  auto instance = problems::load_instance(*problem, a.instance);
  auto program = load_program(*problem, a.program);
  sandbox::Budget budget;
  budget.wall_clock_seconds = a.seconds;
  budget.scorer_step_budget = a.steps;
  budget.validate();
  auto report = sandbox::run_candidate(*problem, *instance, program, budget);
  if (!a.export_path.empty() && report.outcome.ok()) {
    sandbox::RunControl control(budget);
    write_file(a.export_path, problem->run_backbone(*instance, program, control)->export_text());
  }
  out << sandbox::to_json(report).dump() << '\n';
}

struct EvolveArgs {
  std::string config;
  bool contest_mode = false;
  std::optional<std::uint64_t> max_evaluations, seed;
  std::optional<int> workers;
};

void cmd_evolve(const EvolveArgs& a, std::ostream& out) {
  RunConfig cfg = load_run_config(a.config);
  if (a.contest_mode) cfg.evolution.stop.max_wall_clock = kContestSeconds;
  if (a.max_evaluations) cfg.evolution.stop.max_evaluations = *a.max_evaluations;
  if (a.seed) cfg.evolution.rng_seed = *a.seed;
  if (a.workers) cfg.evolution.workers = *a.workers;
  cfg.evolution.validate();
  auto problem = problems::make_problem(cfg.problem, cfg.problem_options);
  std::vector<std::shared_ptr<const problems::Instance>> instances;
  for (const auto& p : cfg.instances) instances.push_back(problems::load_instance(*problem, p));
  auto seed = load_program(*problem, cfg.seed_program ? cfg.seed_program->string() : "");
  auto provider = make_provider(cfg.provider);
  auto result = evolution::evolve(*problem, instances, seed, cfg.evolution, *provider, cfg.budget);

  fs::create_directories(cfg.output_dir);
  std::ostringstream history;
  evolution::write_history_csv(history, result.history);
  write_file(cfg.output_dir / "history.csv", history.str());
  write_file(cfg.output_dir / "best.hcs", result.best.program.source());
  json summary{{"problem", cfg.problem},
               {"provider", provider->name()},
               {"best_fitness", result.best.fitness},
               {"seed_fitness", result.seed.fitness},
               {"best_program_id", result.best.program.id_hex()},
               {"chain_length", result.best.chain_length},
               {"evaluations", result.evaluations},
               {"rejected", result.rejected},
               {"resets", result.resets},
               {"wall_seconds", result.wall_seconds},
               {"evolution", evolution::to_json(cfg.evolution)},
               {"budget", budget_to_json(cfg.budget)}};
  write_file(cfg.output_dir / "summary.json", summary.dump(2) + "\n");
  out << summary.dump() << '\n';
}

void cmd_rank(const std::string& leaderboard, std::int64_t fitness, std::ostream& out) {
  const auto board = load_leaderboard(leaderboard);
  const auto s = rank_of(board, fitness);
  out << json{{"contest", board.contest},
              {"fitness", fitness},
              {"rank", s.rank},
              {"entries", board.entries.size()},
              {"percentile", s.percentile},
              {"normalized", s.normalized}}
             .dump()
      << '\n';
}

void cmd_report(const std::string& history_path, const std::string& leaderboard, const std::string& out_path,
                std::ostream& out) {
  std::ifstream hf(history_path);
  if (!hf) throw Failure("io", "cannot open " + history_path);
  const auto history = evolution::read_history_csv(hf);
  const auto rows = build_report(history, load_leaderboard(leaderboard));
  std::ostringstream csv;
  write_report_csv(csv, rows);
  if (out_path.empty()) {
    out << csv.str();
  } else {
    write_file(out_path, csv.str());
    out << json{{"rows", rows.size()}, {"out", out_path}}.dump() << '\n';
  }
}

void cmd_gen_ahc(std::uint64_t seed, const std::string& dir, int count, int n, std::ostream& out) {
  if (count < 1) throw Failure("usage", "--count must be at least 1");
  if (n < 1) throw Failure("usage", "--n must be at least 1");
  fs::create_directories(dir);
  problems::fishing::GeneratorParams params;
  params.n = n;
  json files = json::array();
  for (int i = 0; i < count; ++i) {
    std::ostringstream name;
    name << std::setw(4) << std::setfill('0') << i << ".in";
    const fs::path path = fs::path(dir) / name.str();
    write_file(path, problems::fishing::generate_instance_text(seed + static_cast<std::uint64_t>(i), params));
    files.push_back(path.string());
  }
  out << json{{"seed", seed}, {"files", files}}.dump() << '\n';
}

void cmd_ci(double mean, double std, std::ostream& out) {
  if (!(std >= 0.0)) throw Failure("usage", "--std must be non-negative");
  const auto ci = problems::fishing::bootstrap_ci(mean, std);
  out << json{{"total_mean", ci.total_mean},
              {"total_halfwidth", ci.total_halfwidth},
              {"low", ci.total_mean - ci.total_halfwidth},
              {"high", ci.total_mean + ci.total_halfwidth}}
             .dump()
      << '\n';
}

void print_error(std::ostream& out, const std::string& type, const std::string& message) {
  out << json{{"error", {{"type", type}, {"message", message}}}}.dump() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Evolve and evaluate greedy scoring heuristics for contest problems.", "hcevo"};
  app.require_subcommand(1);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Score one program on one instance");
  eval->add_option("--problem", ev.problem, "Problem name")->required();
  eval->add_option("--instance", ev.instance, "Instance file")->required()->check(CLI::ExistingFile);
  eval->add_option("--program", ev.program, "Scoring program file (default: base scorer)")->check(CLI::ExistingFile);
  eval->add_option("--options", ev.options, "Problem options as JSON");
  eval->add_option("--cell-sizes", ev.cell_sizes, "fishing_ahc039 cell sizes to sweep")->delimiter(',');
  eval->add_option("--seconds", ev.seconds, "Wall clock budget");
  eval->add_option("--steps", ev.steps, "Step budget per scorer call");
  eval->add_option("--export", ev.export_path, "Write the solution in submission format");

  EvolveArgs evo;
  auto* evolve = app.add_subcommand("evolve", "Run an evolution campaign");
  evolve->add_option("--config", evo.config, "Run config JSON")->required()->check(CLI::ExistingFile);
  evolve->add_flag("--contest-mode", evo.contest_mode, "Stop the campaign after 7200 s");
  evolve->add_option("--max-evaluations", evo.max_evaluations, "Override stop.max_evaluations");
  evolve->add_option("--seed", evo.seed, "Override rng_seed");
  evolve->add_option("--workers", evo.workers, "Override workers");

  std::string board_path;
  std::int64_t fitness = 0;
  auto* rank = app.add_subcommand("rank", "Place a fitness on a leaderboard");
  rank->add_option("--leaderboard", board_path, "Leaderboard CSV (rank,score)")->required()->check(CLI::ExistingFile);
  rank->add_option("--fitness", fitness, "Fitness to rank")->required();

  std::string history_path, report_out;
  auto* report = app.add_subcommand("report", "Rank every history row against a leaderboard");
  report->add_option("--history", history_path, "History CSV")->required()->check(CLI::ExistingFile);
  report->add_option("--leaderboard", board_path, "Leaderboard CSV")->required()->check(CLI::ExistingFile);
  report->add_option("--out", report_out, "Output CSV (default: stdout)");

  std::uint64_t gen_seed = 0;
  std::string gen_dir;
  int gen_count = 1, gen_n = problems::fishing::GeneratorParams{}.n;
  auto* gen = app.add_subcommand("gen-ahc", "Generate fishing instances");
  gen->add_option("--seed", gen_seed, "First seed")->required();
  gen->add_option("--out", gen_dir, "Output directory")->required();
  gen->add_option("--count", gen_count, "Number of files");
  gen->add_option("--n", gen_n, "Points per fish type");

  double mean = 0.0, std = 0.0;
  auto* ci = app.add_subcommand("ci", "Bootstrap interval for a 150-instance total");
  ci->add_option("--mean", mean, "Per-instance mean")->required();
  ci->add_option("--std", std, "Per-instance standard deviation")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    print_error(out, "usage", e.what());
    return 2;
  }

  try {
    if (*eval) cmd_eval(ev, out);
    if (*evolve) cmd_evolve(evo, out);
    if (*rank) cmd_rank(board_path, fitness, out);
    if (*report) cmd_report(history_path, board_path, report_out, out);
    if (*gen) cmd_gen_ahc(gen_seed, gen_dir, gen_count, gen_n, out);
    if (*ci) cmd_ci(mean, std, out);
  } catch (const Failure& e) {
    print_error(out, e.type, e.what());
    return e.type == "usage" ? 2 : 1;
  } catch (const json::exception& e) {
    print_error(out, "json", e.what());
    return 1;
  } catch (const lang::ParseError& e) {
    print_error(out, "parse", e.what());
    return 1;
  } catch (const problems::InputError& e) {
    print_error(out, "input", e.what());
    return 1;
  } catch (const problems::NotFound& e) {
    print_error(out, "not-found", e.what());
    return 1;
  } catch (const evolution::InvalidSeed& e) {
    print_error(out, "invalid-seed", e.what());
    return 1;
  } catch (const evolution::ProviderUnavailable& e) {
    print_error(out, "provider-unavailable", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    print_error(out, "invalid-argument", e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error(out, "internal", e.what());
    return 1;
  }
  return 0;
}

}  // namespace hcevo::harness
