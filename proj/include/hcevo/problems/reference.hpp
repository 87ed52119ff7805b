#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hcevo::problems {

struct ReferenceProgram {
  std::string name;
  std::string problem;
  std::string source;
  std::string provenance;
  // instance id (file name) -> fitness
  std::map<std::string, std::int64_t> expected_scores;
};

// $HCEVO_ASSET_DIR if set, else the source tree's assets directory.
std::filesystem::path asset_dir();

// Reads <dir>/manifest.json and every program it lists. Throws
// std::runtime_error on a missing file or malformed manifest.
std::vector<ReferenceProgram> load_references(const std::filesystem::path& dir);
std::vector<ReferenceProgram> load_references();

const ReferenceProgram& find_reference(const std::vector<ReferenceProgram>& refs, std::string_view name);

// Looks for an instance file in $HCEVO_DATA_DIR, $HCEVO_DATA_DIR/<problem>
// and the shipped assets/instances, in that order.
std::optional<std::filesystem::path> locate_instance(std::string_view problem, std::string_view instance_id);

}  // namespace hcevo::problems
