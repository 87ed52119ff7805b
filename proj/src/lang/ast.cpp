#include "hcevo/lang/ast.hpp"

#include <array>
#include <limits>

namespace hcevo::lang {

namespace {

constexpr std::array<std::string_view, 9> kBuiltinNames = {
    "min", "max", "abs", "len", "floor", "ln", "sorted", "sum", "range"};

bool same_block(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_structure(a[i], b[i])) return false;
  }
  return true;
}

void count_exprs(const Expr& e, std::size_t& n) {
  ++n;
  for (const auto& a : e.args) count_exprs(a, n);
}

void count_block(const std::vector<Stmt>& block, std::size_t& n) {
  for (const auto& s : block) {
    count_exprs(s.expr, n);
    count_block(s.body, n);
    count_block(s.orelse, n);
  }
}

}  // namespace

std::string_view builtin_name(Builtin b) {
  return kBuiltinNames[static_cast<std::size_t>(b)];
}

std::optional<Builtin> builtin_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kBuiltinNames.size(); ++i) {
    if (kBuiltinNames[i] == name) return static_cast<Builtin>(i);
  }
  return std::nullopt;
}

std::string_view binary_op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::kOr: return "or";
    case BinaryOp::kAnd: return "and";
    case BinaryOp::kLt: return "<";
    case BinaryOp::kLe: return "<=";
    case BinaryOp::kGt: return ">";
    case BinaryOp::kGe: return ">=";
    case BinaryOp::kEq: return "==";
    case BinaryOp::kNe: return "!=";
    case BinaryOp::kIn: return "in";
    case BinaryOp::kNotIn: return "not in";
    case BinaryOp::kAdd: return "+";
    case BinaryOp::kSub: return "-";
    case BinaryOp::kMul: return "*";
    case BinaryOp::kDiv: return "/";
    case BinaryOp::kFloorDiv: return "//";
    case BinaryOp::kMod: return "%";
  }
  return "?";
}

int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::kOr: return 1;
    case BinaryOp::kAnd: return 2;
    case BinaryOp::kAdd:
    case BinaryOp::kSub: return 5;
    case BinaryOp::kMul:
    case BinaryOp::kDiv:
    case BinaryOp::kFloorDiv:
    case BinaryOp::kMod: return 6;
    default: return 4;  // comparisons and membership
  }
}

Expr Expr::make_literal(Value v, Span span) {
  Expr e;
  e.kind = ExprKind::kLiteral;
  e.literal = std::move(v);
  e.span = span;
  return e;
}

Expr Expr::make_name(std::string name, Span span) {
  Expr e;
  e.kind = ExprKind::kName;
  e.name = std::move(name);
  e.span = span;
  return e;
}

Expr Expr::make_field(Expr object, std::string field, Span span) {
  Expr e;
  e.kind = ExprKind::kField;
  e.name = std::move(field);
  e.args.push_back(std::move(object));
  e.span = span;
  return e;
}

Expr Expr::make_index(Expr object, Expr index, Span span) {
  Expr e;
  e.kind = ExprKind::kIndex;
  e.args.push_back(std::move(object));
  e.args.push_back(std::move(index));
  e.span = span;
  return e;
}

Expr Expr::make_unary(UnaryOp op, Expr operand, Span span) {
  if (op == UnaryOp::kNeg && operand.kind == ExprKind::kLiteral) {
    const Value& v = operand.literal;
    if (v.kind() == Kind::kInt && v.as_int() != std::numeric_limits<std::int64_t>::min()) {
      return make_literal(Value::integer(-v.as_int()), span);
    }
    if (v.kind() == Kind::kReal) return make_literal(Value::real(-v.as_real()), span);
  }
  Expr e;
  e.kind = ExprKind::kUnary;
  e.unary_op = op;
  e.args.push_back(std::move(operand));
  e.span = span;
  return e;
}

Expr Expr::make_binary(BinaryOp op, Expr lhs, Expr rhs, Span span) {
  Expr e;
  e.kind = ExprKind::kBinary;
  e.binary_op = op;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  e.span = span;
  return e;
}

Expr Expr::make_call(Builtin fn, std::vector<Expr> args, Span span) {
  Expr e;
  e.kind = ExprKind::kCall;
  e.builtin = fn;
  e.args = std::move(args);
  e.span = span;
  return e;
}

Expr Expr::make_tuple(std::vector<Expr> items, Span span) {
  Expr e;
  e.kind = ExprKind::kTuple;
  e.args = std::move(items);
  e.span = span;
  return e;
}

Expr Expr::make_list(std::vector<Expr> items, Span span) {
  Expr e;
  e.kind = ExprKind::kList;
  e.args = std::move(items);
  e.span = span;
  return e;
}

bool same_structure(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  switch (a.kind) {
    case ExprKind::kLiteral:
      if (!identical(a.literal, b.literal)) return false;
      break;
    case ExprKind::kName:
    case ExprKind::kField:
      if (a.name != b.name) return false;
      break;
    case ExprKind::kUnary:
      if (a.unary_op != b.unary_op) return false;
      break;
    case ExprKind::kBinary:
      if (a.binary_op != b.binary_op) return false;
      break;
    case ExprKind::kCall:
      if (a.builtin != b.builtin) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!same_structure(a.args[i], b.args[i])) return false;
  }
  return true;
}

bool same_structure(const Stmt& a, const Stmt& b) {
  return a.kind == b.kind && a.name == b.name && same_structure(a.expr, b.expr) &&
         same_block(a.body, b.body) && same_block(a.orelse, b.orelse);
}

bool same_structure(const Function& a, const Function& b) {
  return a.name == b.name && a.params == b.params && same_block(a.body, b.body);
}

std::size_t expr_count(const Function& fn) {
  std::size_t n = 0;
  count_block(fn.body, n);
  return n;
}

}  // namespace hcevo::lang
