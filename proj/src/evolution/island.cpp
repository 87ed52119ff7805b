#include "hcevo/evolution/island.hpp"

#include <algorithm>
#include <stdexcept>

namespace hcevo::evolution {

bool better(const Candidate& a, const Candidate& b) {
  if (a.fitness != b.fitness) return a.fitness > b.fitness;
  return a.born_at < b.born_at;
}

Island::Island(int id, std::size_t capacity) : id_(id), capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("island capacity must be positive");
}

const Candidate& Island::best() const {
  if (members_.empty()) throw std::logic_error("empty island has no best");
  return *std::min_element(members_.begin(), members_.end(), better);
}

void Island::admit(Candidate candidate) {
  members_.push_back(std::move(candidate));
  if (members_.size() <= capacity_) return;
  auto worst = std::min_element(members_.begin(), members_.end(), [](const Candidate& a, const Candidate& b) {
    if (a.fitness != b.fitness) return a.fitness < b.fitness;
    return a.born_at < b.born_at;
  });
  members_.erase(worst);
}

std::vector<const Candidate*> select_parent_candidates(const Island& island, std::size_t k) {
  if (island.empty()) throw std::logic_error("cannot select parents from an empty island");
  std::vector<const Candidate*> order;
  for (const auto& c : island.members()) order.push_back(&c);
  std::stable_sort(order.begin(), order.end(), [](const Candidate* a, const Candidate* b) {
    if (a->fitness != b->fitness) return a->fitness < b->fitness;
    return a->born_at < b->born_at;
  });
  const std::size_t take = std::min(k, order.size());
  return {order.end() - static_cast<std::ptrdiff_t>(take), order.end()};
}

std::vector<lang::ScoringProgram> select_parents(const Island& island, std::size_t k) {
  std::vector<lang::ScoringProgram> out;
  for (const Candidate* c : select_parent_candidates(island, k)) out.push_back(c->program);
  return out;
}

std::vector<int> reset_islands(std::vector<Island>& islands, double fraction, Rng& rng) {
  const auto n_reset = static_cast<std::size_t>(fraction * static_cast<double>(islands.size()));
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < islands.size(); ++i) {
    if (!islands[i].empty()) order.push_back(i);
  }
  // Empty islands sort first; nothing to rank them by.
  std::vector<std::size_t> empties;
  for (std::size_t i = 0; i < islands.size(); ++i) {
    if (islands[i].empty()) empties.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return islands[a].best().fitness < islands[b].best().fitness;
  });
  order.insert(order.begin(), empties.begin(), empties.end());
  if (n_reset == 0 || n_reset >= order.size()) return {};
  std::vector<std::size_t> survivors(order.begin() + static_cast<std::ptrdiff_t>(n_reset), order.end());
  std::erase_if(survivors, [&](std::size_t i) { return islands[i].empty(); });
  if (survivors.empty()) return {};
  std::sort(survivors.begin(), survivors.end());
  std::vector<std::size_t> doomed(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_reset));
  std::sort(doomed.begin(), doomed.end());
  std::vector<int> reset_ids;
  for (std::size_t i : doomed) {
    const Island& donor = islands[survivors[rng.below(survivors.size())]];
    Candidate clone = donor.best();
    islands[i].clear();
    islands[i].admit(std::move(clone));
    reset_ids.push_back(islands[i].id());
  }
  return reset_ids;
}

}  // namespace hcevo::evolution
