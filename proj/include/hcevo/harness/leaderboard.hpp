#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hcevo/evolution/evolve.hpp"

namespace hcevo::harness {

struct LeaderboardEntry {
  int rank = 0;
  std::int64_t score = 0;
};

struct Leaderboard {
  std::string contest;
  // Scores non-increasing, ranks 1..n.
  std::vector<LeaderboardEntry> entries;
};

// CSV with header "rank,score". Throws std::invalid_argument.
Leaderboard parse_leaderboard(std::istream& in, std::string contest);
Leaderboard load_leaderboard(const std::filesystem::path& path);

struct Standing {
  int rank = 0;
  double percentile = 0.0;
  double normalized = 0.0;
};

// Competition ranking: ties share the better rank. Throws
// std::invalid_argument on an empty board or a non-positive top score.
Standing rank_of(const Leaderboard& board, std::int64_t fitness);

struct ReportRow {
  std::uint64_t eval_counter = 0;
  std::int64_t best_fitness = 0;
  int rank = 0;
  double normalized = 0.0;
};

std::vector<ReportRow> build_report(std::span<const evolution::HistoryEntry> history, const Leaderboard& board);
// Header "eval_counter,best_fitness,rank,normalized".
void write_report_csv(std::ostream& out, std::span<const ReportRow> rows);
std::vector<ReportRow> read_report_csv(std::istream& in);

}  // namespace hcevo::harness
