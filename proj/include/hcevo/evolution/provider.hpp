#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hcevo/lang/mutate.hpp"
#include "hcevo/lang/program.hpp"

namespace hcevo::evolution {

class ProviderUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Proposes new scoring programs from parents ordered worst to best. Must be
// callable from several threads at once.
class MutationProvider {
 public:
  virtual ~MutationProvider() = default;
  virtual std::string_view name() const = 0;
  // Returns at least one program text. Throws ProviderUnavailable.
  virtual std::vector<std::string> propose(std::string_view backbone,
                                           std::span<const lang::ScoringProgram> parents, std::size_t n,
                                           std::uint64_t seed) const = 0;
};

// Applies random tree mutations to the best parent.
class BuiltinGp : public MutationProvider {
 public:
  BuiltinGp() = default;
  explicit BuiltinGp(std::vector<lang::MutationKind> kinds);

  std::string_view name() const override { return "builtin-gp"; }
  std::vector<std::string> propose(std::string_view backbone, std::span<const lang::ScoringProgram> parents,
                                   std::size_t n, std::uint64_t seed) const override;

 private:
  std::vector<lang::MutationKind> kinds_{std::begin(lang::kAllMutationKinds),
                                         std::end(lang::kAllMutationKinds)};
};

// Fills {backbone} and {parents} in the template.
std::string render_prompt(std::string_view prompt_template, std::string_view backbone,
                          std::span<const lang::ScoringProgram> parents);
std::filesystem::path default_prompt_path();

struct RemoteConfig {
  // Base URL, e.g. "http://localhost:8000"; requests go to <endpoint>/mutate.
  std::string endpoint;
  std::string token;
  std::string prompt_template;
  double timeout_seconds = 120.0;
};

// POST /mutate {"backbone", "parents", "n", "prompt"} -> {"candidates": [...]}.
class RemoteLlm : public MutationProvider {
 public:
  explicit RemoteLlm(RemoteConfig config);

  std::string_view name() const override { return "remote-llm"; }
  std::vector<std::string> propose(std::string_view backbone, std::span<const lang::ScoringProgram> parents,
                                   std::size_t n, std::uint64_t seed) const override;

 private:
  RemoteConfig config_;
};

}  // namespace hcevo::evolution
