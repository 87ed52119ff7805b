#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hcevo/lang/program.hpp"
#include "hcevo/rng.hpp"

namespace hcevo::evolution {

struct Candidate {
  lang::ScoringProgram program;
  std::int64_t fitness = 0;
  // Successful mutations since the seed program.
  int chain_length = 0;
  std::uint64_t born_at = 0;
};

// Higher fitness first, then earlier birth.
bool better(const Candidate& a, const Candidate& b);

class Island {
 public:
  Island(int id, std::size_t capacity);

  int id() const { return id_; }
  std::size_t capacity() const { return capacity_; }
  const std::vector<Candidate>& members() const { return members_; }
  bool empty() const { return members_.empty(); }
  // Requires a non-empty island.
  const Candidate& best() const;

  // Appends, then evicts the worst member (ties: oldest) if over capacity.
  void admit(Candidate candidate);
  void clear() { members_.clear(); }

 private:
  int id_;
  std::size_t capacity_;
  std::vector<Candidate> members_;
};

// Best-shot parents: the top min(k, size) members ordered worst to best,
// equal fitness ordered by birth. Requires a non-empty island.
std::vector<lang::ScoringProgram> select_parents(const Island& island, std::size_t k);
std::vector<const Candidate*> select_parent_candidates(const Island& island, std::size_t k);

// Empties the floor(fraction * n) islands with the lowest best fitness (ties:
// lower id) and reseeds each with the best of a uniformly drawn survivor.
// Returns the ids that were reset.
std::vector<int> reset_islands(std::vector<Island>& islands, double fraction, Rng& rng);

}  // namespace hcevo::evolution
