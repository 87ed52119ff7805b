#include "hcevo/problems/problem.hpp"

#include <fstream>
#include <sstream>

namespace hcevo::problems {

std::int64_t fitness(const Problem& problem, const Instance& instance,
                     const lang::ScoringProgram& program, sandbox::RunControl& control) {
  auto solution = problem.run_backbone(instance, program, control);
  return problem.evaluate(instance, *solution);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::shared_ptr<const Instance> load_instance(const Problem& problem,
                                              const std::filesystem::path& path) {
  auto parsed = problem.parse(read_file(path));
  auto instance = std::const_pointer_cast<Instance>(parsed);
  instance->set_id(path.filename().string());
  return instance;
}

}  // namespace hcevo::problems
