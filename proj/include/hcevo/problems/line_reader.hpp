#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hcevo::problems {

// Line-oriented reader for contest inputs. Every failure throws InputError
// naming the line.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  // Next non-blank line split on whitespace; `expected` of 0 accepts any
  // number of fields.
  std::vector<std::string_view> fields(std::size_t expected, std::string_view what);
  // Same as fields(), parsed as integers.
  std::vector<std::int64_t> integers(std::size_t expected, std::string_view what);
  std::int64_t integer(std::string_view token, std::string_view what) const;
  // Throws unless only blank lines remain.
  void expect_end();
  int line_number() const { return line_; }

 private:
  [[noreturn]] void fail(const std::string& message) const;

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 0;
};

}  // namespace hcevo::problems
