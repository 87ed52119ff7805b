#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "hcevo/lang/program.hpp"

namespace hcevo::lang {

enum class MutationKind {
  kConstantJitter,
  kSubtreeReplace,
  kThresholdGuardInsert,
  kLinearRecombine,
  kParentCrossover,
};

inline constexpr MutationKind kAllMutationKinds[] = {
    MutationKind::kConstantJitter, MutationKind::kSubtreeReplace,
    MutationKind::kThresholdGuardInsert, MutationKind::kLinearRecombine,
    MutationKind::kParentCrossover};

std::string_view mutation_kind_name(MutationKind kind);
std::optional<MutationKind> mutation_kind_from_name(std::string_view name);

struct MutationOp {
  MutationKind kind = MutationKind::kConstantJitter;
  std::uint64_t rng_seed = 0;
};

struct MutationResult {
  ScoringProgram program;
  // Set when the operator found no applicable site; `program` is then the
  // unchanged input.
  bool no_op = false;
  std::string detail;
};

// Deterministic given op.rng_seed. The result always re-parses; on success
// it differs from `program` in at least one node.
MutationResult mutate(const ScoringProgram& program, std::span<const ScoringProgram> parents,
                      const MutationOp& op);

}  // namespace hcevo::lang
