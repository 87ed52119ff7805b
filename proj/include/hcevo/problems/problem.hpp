#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hcevo/lang/program.hpp"
#include "hcevo/sandbox/run_control.hpp"

namespace hcevo::problems {

// Malformed contest input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A backbone produced a solution the evaluator refuses. Must not happen for
// any scorer output; signals a bug.
class InvalidSolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Instance {
 public:
  virtual ~Instance() = default;
  const std::string& id() const { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }

 private:
  std::string id_;
};

class Solution {
 public:
  virtual ~Solution() = default;
  // Contest submission format.
  virtual std::string export_text() const = 0;
};

class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string_view name() const = 0;
  // Throws InputError.
  virtual std::shared_ptr<const Instance> parse(std::string_view bytes) const = 0;
  // Throws lang::EvalError or sandbox::{Rejected, Timeout, OverMemory}.
  virtual std::unique_ptr<Solution> run_backbone(const Instance& instance,
                                                 const lang::ScoringProgram& program,
                                                 sandbox::RunControl& control) const = 0;
  // Pure. Throws InvalidSolution.
  virtual std::int64_t evaluate(const Instance& instance, const Solution& solution) const = 0;
  // Text shown to a mutation provider: what the backbone does and which
  // names the scorer may declare.
  virtual std::string_view describe_backbone() const = 0;
  virtual std::span<const std::string_view> bindings() const = 0;
  // The hand-written starting scorer.
  virtual std::string_view base_scorer() const = 0;
};

std::int64_t fitness(const Problem& problem, const Instance& instance,
                     const lang::ScoringProgram& program, sandbox::RunControl& control);

std::string read_file(const std::filesystem::path& path);

// Parses a file; the instance id is the file name.
std::shared_ptr<const Instance> load_instance(const Problem& problem,
                                              const std::filesystem::path& path);

template <typename T>
const T& instance_as(const Instance& instance) {
  const T* p = dynamic_cast<const T*>(&instance);
  if (p == nullptr) throw std::invalid_argument("instance belongs to another problem");
  return *p;
}

template <typename T>
const T& solution_as(const Solution& solution) {
  const T* p = dynamic_cast<const T*>(&solution);
  if (p == nullptr) throw std::invalid_argument("solution belongs to another problem");
  return *p;
}

}  // namespace hcevo::problems
