#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "hcevo/lang/ast.hpp"
#include "hcevo/lang/errors.hpp"

namespace hcevo::lang {

// A parsed, name-resolved scoring program. Immutable and cheap to copy.
//
// Grammar (one program per file):
//   program := "fn" IDENT "(" [IDENT {"," IDENT}] ")" block
//   block   := "{" {stmt} "}"
//   stmt    := "let" IDENT "=" expr [";"]
//            | "if" expr block ["else" (block | if-stmt)]
//            | "for" IDENT "in" expr block
//            | "return" expr [";"]
// A source without the "fn" header is read as the body of `fn score()`.
class ScoringProgram {
 public:
  // Throws ParseError.
  static ScoringProgram parse(std::string_view source);
  // Resolves names of an already-built tree. Throws ParseError.
  static ScoringProgram from_ast(Function fn);

  const Function& ast() const { return *fn_; }
  // Canonical rendering of the tree.
  const std::string& source() const { return source_; }
  // FNV-1a hash of the canonical source.
  std::uint64_t id() const { return id_; }
  std::string id_hex() const;

 private:
  std::shared_ptr<const Function> fn_;
  std::string source_;
  std::uint64_t id_ = 0;
};

// Unresolved syntax tree. Throws ParseError on syntax errors.
Function parse_function(std::string_view source);

std::string render(const Function& fn);
std::string render(const Expr& expr);
inline std::string render(const ScoringProgram& p) { return p.source(); }

// Assigns variable slots, interns field names and checks that every
// identifier is a parameter or was bound earlier in program order.
void resolve(Function& fn);

std::uint64_t fnv1a(std::string_view text);

}  // namespace hcevo::lang
