#include "hcevo/sandbox/run_control.hpp"

#include <unistd.h>

#include <cstdio>

namespace hcevo::sandbox {

void Budget::validate() const {
  if (!(wall_clock_seconds > 0.0)) throw std::invalid_argument("wall_clock_seconds must be > 0");
  if (memory_bytes == 0) throw std::invalid_argument("memory_bytes must be > 0");
  if (scorer_step_budget == 0) throw std::invalid_argument("scorer_step_budget must be > 0");
  if (scorer_value_budget == 0) throw std::invalid_argument("scorer_value_budget must be > 0");
}

std::uint64_t resident_bytes() {
  std::FILE* f = std::fopen("/proc/self/statm", "r");
  if (f == nullptr) return 0;
  unsigned long long size = 0, resident = 0;
  const int n = std::fscanf(f, "%llu %llu", &size, &resident);
  std::fclose(f);
  if (n != 2) return 0;
  return resident * static_cast<std::uint64_t>(sysconf(_SC_PAGESIZE));
}

RunControl::RunControl(const Budget& budget)
    : budget_(budget),
      limits_{budget.scorer_step_budget, budget.scorer_value_budget},
      start_(Clock::now()) {
  budget_.validate();
  const auto span = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(budget_.wall_clock_seconds));
  deadline_ = start_ + span;
}

void RunControl::checkpoint() {
  if (Clock::now() >= deadline_) throw Timeout();
  // Reading /proc is comparatively slow; sample it.
  if ((++ticks_ & 1023U) == 0 && resident_bytes() > budget_.memory_bytes) throw OverMemory();
}

lang::Value RunControl::score(const lang::BoundScorer& scorer, std::span<const lang::Value> args) {
  return scorer(args, limits_, &stats_);
}

double RunControl::elapsed_seconds() const {
  return std::chrono::duration<double>(Clock::now() - start_).count();
}

}  // namespace hcevo::sandbox
