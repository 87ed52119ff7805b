#include "hcevo/evolution/provider.hpp"

#include "httplib.h"
#include "json.hpp"
#include "hcevo/problems/problem.hpp"
#include "hcevo/problems/reference.hpp"
#include "hcevo/rng.hpp"

namespace hcevo::evolution {

BuiltinGp::BuiltinGp(std::vector<lang::MutationKind> kinds) : kinds_(std::move(kinds)) {
  if (kinds_.empty()) throw std::invalid_argument("builtin-gp needs at least one mutation kind");
}

std::vector<std::string> BuiltinGp::propose(std::string_view, std::span<const lang::ScoringProgram> parents,
                                            std::size_t n, std::uint64_t seed) const {
  if (parents.empty()) throw std::invalid_argument("builtin-gp needs a parent");
  Rng rng(seed);
  const lang::ScoringProgram& base = parents.back();
  std::vector<std::string> out;
  for (std::size_t i = 0; i < std::max<std::size_t>(n, 1); ++i) {
    lang::ScoringProgram child = base;
    // Stack one to three operators; skip the ones with no site. Stacked
    // operators can undo each other, so keep going until the text moved.
    const auto depth = rng.between(1, 3);
    int applied = 0;
    for (int attempt = 0; attempt < 32 && (applied < depth || child.id() == base.id()); ++attempt) {
      lang::MutationOp op{kinds_[rng.below(kinds_.size())], rng.next_u64()};
      auto r = lang::mutate(child, parents, op);
      if (r.no_op) continue;
      child = std::move(r.program);
      ++applied;
    }
    out.push_back(child.source());
  }
  return out;
}

std::string render_prompt(std::string_view prompt_template, std::string_view backbone,
                          std::span<const lang::ScoringProgram> parents) {
  std::string listing;
  for (std::size_t i = 0; i < parents.size(); ++i) {
    listing += "# version " + std::to_string(i) + "\n" + parents[i].source() + "\n";
  }
  std::string out(prompt_template);
  auto fill = [&out](std::string_view key, const std::string& value) {
    for (auto pos = out.find(key); pos != std::string::npos; pos = out.find(key, pos + value.size())) {
      out.replace(pos, key.size(), value);
    }
  };
  fill("{backbone}", std::string(backbone));
  fill("{parents}", listing);
  return out;
}

std::filesystem::path default_prompt_path() { return problems::asset_dir() / "prompts" / "mutate_v1.txt"; }

RemoteLlm::RemoteLlm(RemoteConfig config) : config_(std::move(config)) {
  if (config_.endpoint.empty()) throw std::invalid_argument("remote-llm needs an endpoint");
  if (config_.prompt_template.empty()) config_.prompt_template = problems::read_file(default_prompt_path());
}

std::vector<std::string> RemoteLlm::propose(std::string_view backbone,
                                            std::span<const lang::ScoringProgram> parents, std::size_t n,
                                            std::uint64_t) const {
  nlohmann::json body;
  body["backbone"] = std::string(backbone);
  body["parents"] = nlohmann::json::array();
  for (const auto& p : parents) body["parents"].push_back(p.source());
  body["n"] = n;
  body["prompt"] = render_prompt(config_.prompt_template, backbone, parents);

  httplib::Client client(config_.endpoint);
  const auto secs = static_cast<time_t>(config_.timeout_seconds);
  client.set_connection_timeout(secs);
  client.set_read_timeout(secs);
  httplib::Headers headers;
  if (!config_.token.empty()) headers.emplace("Authorization", "Bearer " + config_.token);
  auto res = client.Post("/mutate", headers, body.dump(), "application/json");
  if (!res) throw ProviderUnavailable("remote-llm: " + httplib::to_string(res.error()));
  if (res->status != 200) throw ProviderUnavailable("remote-llm: HTTP " + std::to_string(res->status));
  std::vector<std::string> out;
  try {
    const auto candidates = nlohmann::json::parse(res->body).at("candidates");
    if (!candidates.is_array()) throw ProviderUnavailable("remote-llm: candidates must be an array");
    for (const auto& c : candidates) out.push_back(c.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ProviderUnavailable("remote-llm: malformed response: " + std::string(e.what()));
  }
  if (out.empty()) throw ProviderUnavailable("remote-llm: no candidates returned");
  return out;
}

}  // namespace hcevo::evolution
