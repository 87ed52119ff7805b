#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hcevo/lang/value.hpp"

namespace hcevo::lang {

struct Span {
  int line = 0;
  int column = 0;
};

enum class ExprKind { kLiteral, kName, kField, kIndex, kUnary, kBinary, kCall, kTuple, kList };

enum class UnaryOp { kNeg, kNot };

enum class BinaryOp {
  kOr,
  kAnd,
  kLt,
  kLe,
  kGt,
  kGe,
  kEq,
  kNe,
  kIn,
  kNotIn,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kFloorDiv,
  kMod,
};

enum class Builtin { kMin, kMax, kAbs, kLen, kFloor, kLn, kSorted, kSum, kRange };

std::string_view builtin_name(Builtin b);
std::optional<Builtin> builtin_from_name(std::string_view name);
std::string_view binary_op_text(BinaryOp op);

// Binding strength of an operator, higher binds tighter.
int precedence(BinaryOp op);

// Expression node. `args` holds operands: the object for field access, the
// object and index for indexing, operands for unary/binary ops, call
// arguments, and tuple/list elements.
struct Expr {
  ExprKind kind = ExprKind::kLiteral;
  Value literal;        // kLiteral: none, boolean, integer or real
  std::string name;     // kName identifier, kField field name
  UnaryOp unary_op = UnaryOp::kNeg;
  BinaryOp binary_op = BinaryOp::kAdd;
  Builtin builtin = Builtin::kMin;
  std::vector<Expr> args;
  Span span;

  // Filled by name resolution.
  int slot = -1;
  int symbol = -1;

  static Expr make_literal(Value v, Span span = {});
  static Expr make_name(std::string name, Span span = {});
  static Expr make_field(Expr object, std::string field, Span span = {});
  static Expr make_index(Expr object, Expr index, Span span = {});
  // Negation of a numeric literal folds into a negative literal so that
  // rendering and re-parsing agree.
  static Expr make_unary(UnaryOp op, Expr operand, Span span = {});
  static Expr make_binary(BinaryOp op, Expr lhs, Expr rhs, Span span = {});
  static Expr make_call(Builtin fn, std::vector<Expr> args, Span span = {});
  static Expr make_tuple(std::vector<Expr> items, Span span = {});
  static Expr make_list(std::vector<Expr> items, Span span = {});
};

enum class StmtKind { kLet, kIf, kFor, kReturn };

struct Stmt {
  StmtKind kind = StmtKind::kReturn;
  std::string name;  // kLet target, kFor loop variable
  Expr expr;         // value, condition, iterable or returned expression
  std::vector<Stmt> body;
  std::vector<Stmt> orelse;
  Span span;
  int slot = -1;
};

struct Function {
  std::string name = "score";
  std::vector<std::string> params;
  std::vector<Stmt> body;
  int slot_count = 0;
};

// Structural equality: ignores spans and resolution results.
bool same_structure(const Expr& a, const Expr& b);
bool same_structure(const Stmt& a, const Stmt& b);
bool same_structure(const Function& a, const Function& b);

// Number of expression nodes (statements excluded).
std::size_t expr_count(const Function& fn);

}  // namespace hcevo::lang
