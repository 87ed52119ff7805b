#include "hcevo/harness/leaderboard.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hcevo::harness {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  return s;
}

template <typename T>
T number(const std::string& text, const std::string& what, int row) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument(what + ": malformed value '" + text + "' on row " + std::to_string(row));
  }
  return v;
}

}  // namespace

Leaderboard parse_leaderboard(std::istream& in, std::string contest) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "rank,score") {
    throw std::invalid_argument("leaderboard: expected header rank,score");
  }
  Leaderboard board{std::move(contest), {}};
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    line = trim(line);
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 2) throw std::invalid_argument("leaderboard: row " + std::to_string(row) + " needs 2 cells");
    LeaderboardEntry e{number<int>(trim(cells[0]), "leaderboard", row),
                       number<std::int64_t>(trim(cells[1]), "leaderboard", row)};
    if (e.rank != static_cast<int>(board.entries.size()) + 1) {
      throw std::invalid_argument("leaderboard: ranks must run 1, 2, 3, ... (row " + std::to_string(row) + ")");
    }
    if (!board.entries.empty() && e.score > board.entries.back().score) {
      throw std::invalid_argument("leaderboard: scores must not increase (row " + std::to_string(row) + ")");
    }
    board.entries.push_back(e);
  }
  if (board.entries.empty()) throw std::invalid_argument("leaderboard: no entries");
  return board;
}

Leaderboard load_leaderboard(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  return parse_leaderboard(in, path.stem().string());
}

Standing rank_of(const Leaderboard& board, std::int64_t fitness) {
  if (board.entries.empty()) throw std::invalid_argument("empty leaderboard");
  const std::int64_t top = board.entries.front().score;
  if (top <= 0) throw std::invalid_argument("leaderboard top score must be positive");
  int above = 0;
  for (const auto& e : board.entries) {
    if (e.score > fitness) ++above;
  }
  const auto n = static_cast<double>(board.entries.size());
  Standing s;
  s.rank = above + 1;
  s.percentile = 100.0 * (1.0 - above / n);
  s.normalized = static_cast<double>(fitness) / static_cast<double>(top);
  return s;
}

std::vector<ReportRow> build_report(std::span<const evolution::HistoryEntry> history, const Leaderboard& board) {
  std::vector<ReportRow> rows;
  rows.reserve(history.size());
  for (const auto& h : history) {
    const auto s = rank_of(board, h.best_fitness);
    rows.push_back({h.eval_counter, h.best_fitness, s.rank, s.normalized});
  }
  return rows;
}

void write_report_csv(std::ostream& out, std::span<const ReportRow> rows) {
  out << "eval_counter,best_fitness,rank,normalized\n";
  for (const auto& r : rows) {
    out << r.eval_counter << ',' << r.best_fitness << ',' << r.rank << ',' << std::setprecision(17)
        << r.normalized << '\n';
  }
}

std::vector<ReportRow> read_report_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "eval_counter,best_fitness,rank,normalized") {
    throw std::invalid_argument("report: expected header eval_counter,best_fitness,rank,normalized");
  }
  std::vector<ReportRow> rows;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    line = trim(line);
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 4) throw std::invalid_argument("report: row " + std::to_string(row) + " needs 4 cells");
    rows.push_back({number<std::uint64_t>(cells[0], "report", row), number<std::int64_t>(cells[1], "report", row),
                    number<int>(cells[2], "report", row), number<double>(cells[3], "report", row)});
  }
  return rows;
}

}  // namespace hcevo::harness
