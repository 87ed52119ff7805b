#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "hcevo/evolution/evolve.hpp"
#include "hcevo/sandbox/run_control.hpp"

namespace hcevo::harness {

struct ProviderConfig {
  std::string kind = "builtin-gp";  // or "remote-llm"
  std::string endpoint;
  // Name of the environment variable holding the bearer token.
  std::string token_env = "HCEVO_LLM_TOKEN";
  std::optional<std::filesystem::path> prompt_template;
  double timeout_seconds = 120.0;
};

struct RunConfig {
  std::string problem;
  nlohmann::json problem_options = nlohmann::json::object();
  std::vector<std::filesystem::path> instances;
  // Empty: the problem's base scorer.
  std::optional<std::filesystem::path> seed_program;
  evolution::EvolutionConfig evolution;
  sandbox::Budget budget;
  ProviderConfig provider;
  std::filesystem::path output_dir = "out";
};

// Relative paths resolve against `base_dir`. Every referenced input path must
// exist. Throws std::invalid_argument.
RunConfig run_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

nlohmann::json budget_to_json(const sandbox::Budget& b);
sandbox::Budget budget_from_json(const nlohmann::json& j);

std::unique_ptr<evolution::MutationProvider> make_provider(const ProviderConfig& cfg);

}  // namespace hcevo::harness
