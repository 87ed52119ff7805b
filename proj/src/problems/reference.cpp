#include "hcevo/problems/reference.hpp"

#include <cstdlib>
#include <stdexcept>

#include "json.hpp"
#include "hcevo/problems/problem.hpp"

namespace hcevo::problems {

namespace fs = std::filesystem;

fs::path asset_dir() {
  if (const char* env = std::getenv("HCEVO_ASSET_DIR"); env != nullptr && *env != '\0') return env;
  return HCEVO_ASSET_DIR;
}

std::vector<ReferenceProgram> load_references(const fs::path& dir) {
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(read_file(dir / "manifest.json"));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed reference manifest: " + std::string(e.what()));
  }
  std::vector<ReferenceProgram> out;
  try {
    for (const auto& entry : manifest.at("programs")) {
      ReferenceProgram ref;
      ref.name = entry.at("name").get<std::string>();
      ref.problem = entry.at("problem").get<std::string>();
      ref.provenance = entry.value("provenance", "");
      ref.source = read_file(dir / entry.at("file").get<std::string>());
      for (const auto& [id, score] : entry.at("expected_scores").items()) {
        ref.expected_scores.emplace(id, score.get<std::int64_t>());
      }
      out.push_back(std::move(ref));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed reference manifest: " + std::string(e.what()));
  }
  return out;
}

std::vector<ReferenceProgram> load_references() { return load_references(asset_dir() / "reference"); }

const ReferenceProgram& find_reference(const std::vector<ReferenceProgram>& refs, std::string_view name) {
  for (const auto& r : refs) {
    if (r.name == name) return r;
  }
  throw std::runtime_error("unknown reference program: " + std::string(name));
}

std::optional<fs::path> locate_instance(std::string_view problem, std::string_view instance_id) {
  std::vector<fs::path> dirs;
  if (const char* env = std::getenv("HCEVO_DATA_DIR"); env != nullptr && *env != '\0') {
    dirs.emplace_back(env);
    dirs.push_back(fs::path(env) / std::string(problem));
  }
  dirs.push_back(asset_dir() / "instances");
  for (const auto& d : dirs) {
    const fs::path p = d / std::string(instance_id);
    std::error_code ec;
    if (fs::is_regular_file(p, ec)) return p;
  }
  return std::nullopt;
}

}  // namespace hcevo::problems
