#include "hcevo/harness/run_config.hpp"

#include <cstdlib>

#include "hcevo/problems/problem.hpp"
#include "hcevo/problems/registry.hpp"

namespace hcevo::harness {

namespace fs = std::filesystem;

namespace {

fs::path existing(const fs::path& base, const std::string& p, const std::string& what) {
  fs::path path(p);
  if (path.is_relative()) path = base / path;
  if (!fs::exists(path)) throw std::invalid_argument(what + " not found: " + path.string());
  return path;
}

}  // namespace

nlohmann::json budget_to_json(const sandbox::Budget& b) {
  return {{"wall_clock_seconds", b.wall_clock_seconds},
          {"memory_bytes", b.memory_bytes},
          {"scorer_step_budget", b.scorer_step_budget},
          {"scorer_value_budget", b.scorer_value_budget}};
}

sandbox::Budget budget_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("budget must be an object");
  sandbox::Budget b;
  try {
    b.wall_clock_seconds = j.value("wall_clock_seconds", b.wall_clock_seconds);
    b.memory_bytes = j.value("memory_bytes", b.memory_bytes);
    b.scorer_step_budget = j.value("scorer_step_budget", b.scorer_step_budget);
    b.scorer_value_budget = j.value("scorer_value_budget", b.scorer_value_budget);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("budget: " + std::string(e.what()));
  }
  b.validate();
  return b;
}

RunConfig run_config_from_json(const nlohmann::json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw std::invalid_argument("run config must be an object");
  RunConfig cfg;
  try {
    cfg.problem = j.at("problem").get<std::string>();
    if (j.contains("problem_options")) cfg.problem_options = j.at("problem_options");
    for (const auto& p : j.at("instances")) {
      cfg.instances.push_back(existing(base_dir, p.get<std::string>(), "instance"));
    }
    if (j.contains("seed_program") && !j.at("seed_program").is_null()) {
      cfg.seed_program = existing(base_dir, j.at("seed_program").get<std::string>(), "seed program");
    }
    if (j.contains("evolution")) cfg.evolution = evolution::config_from_json(j.at("evolution"));
    if (j.contains("budget")) cfg.budget = budget_from_json(j.at("budget"));
    if (j.contains("provider")) {
      const auto& p = j.at("provider");
      cfg.provider.kind = p.value("kind", cfg.provider.kind);
      cfg.provider.endpoint = p.value("endpoint", cfg.provider.endpoint);
      cfg.provider.token_env = p.value("token_env", cfg.provider.token_env);
      cfg.provider.timeout_seconds = p.value("timeout_seconds", cfg.provider.timeout_seconds);
      if (p.contains("prompt_template")) {
        cfg.provider.prompt_template = existing(base_dir, p.at("prompt_template").get<std::string>(), "prompt template");
      }
    }
    if (j.contains("output_dir")) {
      fs::path out(j.at("output_dir").get<std::string>());
      cfg.output_dir = out.is_relative() ? base_dir / out : out;
    } else {
      cfg.output_dir = base_dir / cfg.output_dir;
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("run config: " + std::string(e.what()));
  }
  if (cfg.instances.empty()) throw std::invalid_argument("run config: at least one instance is required");
  if (cfg.provider.kind != "builtin-gp" && cfg.provider.kind != "remote-llm") {
    throw std::invalid_argument("run config: provider.kind must be builtin-gp or remote-llm");
  }
  if (cfg.provider.kind == "remote-llm" && cfg.provider.endpoint.empty()) {
    throw std::invalid_argument("run config: remote-llm needs provider.endpoint");
  }
  // Fail early on an unknown problem or bad options.
  problems::make_problem(cfg.problem, cfg.problem_options);
  return cfg;
}

RunConfig load_run_config(const fs::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(problems::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("run config: " + std::string(e.what()));
  }
  return run_config_from_json(j, path.parent_path());
}

std::unique_ptr<evolution::MutationProvider> make_provider(const ProviderConfig& cfg) {
  if (cfg.kind == "builtin-gp") return std::make_unique<evolution::BuiltinGp>();
  evolution::RemoteConfig rc;
  rc.endpoint = cfg.endpoint;
  if (const char* tok = std::getenv(cfg.token_env.c_str()); tok != nullptr) rc.token = tok;
  if (cfg.prompt_template) rc.prompt_template = problems::read_file(*cfg.prompt_template);
  rc.timeout_seconds = cfg.timeout_seconds;
  return std::make_unique<evolution::RemoteLlm>(rc);
}

}  // namespace hcevo::harness
