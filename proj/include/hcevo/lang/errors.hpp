#pragma once

#include <stdexcept>
#include <string>

#include "hcevo/lang/ast.hpp"

namespace hcevo::lang {

enum class ParseErrorKind { kSyntax, kUndeclaredIdentifier, kArity };

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, Span span, const std::string& message);

  ParseErrorKind kind() const { return kind_; }
  Span span() const { return span_; }

 private:
  ParseErrorKind kind_;
  Span span_;
};

enum class EvalErrorKind {
  kStepBudget,
  kValueBudget,
  kType,
  kDivisionByZero,
  kDomain,
  kIndex,
  kKey,
  kUnbound,
  kMissingBinding,
  kOverflow,
};

std::string_view eval_error_name(EvalErrorKind kind);

// Runtime failure of a scoring program. Always recoverable: the caller
// rejects the candidate and carries on.
class EvalError : public std::runtime_error {
 public:
  EvalError(EvalErrorKind kind, Span span, const std::string& message);

  EvalErrorKind kind() const { return kind_; }
  Span span() const { return span_; }

 private:
  EvalErrorKind kind_;
  Span span_;
};

}  // namespace hcevo::lang
