#include "hcevo/problems/line_reader.hpp"

#include <charconv>

#include "hcevo/problems/problem.hpp"

namespace hcevo::problems {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace

void LineReader::fail(const std::string& message) const {
  throw InputError("line " + std::to_string(line_) + ": " + message);
}

std::vector<std::string_view> LineReader::fields(std::size_t expected, std::string_view what) {
  while (pos_ < text_.size()) {
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    std::string_view line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_;
    auto parts = split(line);
    if (parts.empty()) continue;
    if (expected != 0 && parts.size() != expected) {
      fail("expected " + std::to_string(expected) + " fields for " + std::string(what) +
           ", got " + std::to_string(parts.size()));
    }
    return parts;
  }
  ++line_;
  fail("unexpected end of input, wanted " + std::string(what));
}

std::int64_t LineReader::integer(std::string_view token, std::string_view what) const {
  std::int64_t v = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    fail("malformed integer '" + std::string(token) + "' in " + std::string(what));
  }
  return v;
}

std::vector<std::int64_t> LineReader::integers(std::size_t expected, std::string_view what) {
  auto parts = fields(expected, what);
  std::vector<std::int64_t> out;
  out.reserve(parts.size());
  for (auto p : parts) out.push_back(integer(p, what));
  return out;
}

void LineReader::expect_end() {
  while (pos_ < text_.size()) {
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    std::string_view line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_;
    if (!split(line).empty()) fail("trailing data after the last expected line");
  }
}

}  // namespace hcevo::problems
