#include "hcevo/lang/program.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <unordered_map>

namespace hcevo::lang {

namespace {

constexpr int kPrecNot = 3;
constexpr int kPrecUnary = 7;
constexpr int kPrecPostfix = 8;
constexpr int kPrecAtom = 9;

std::string format_real(double r) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), r);
  std::string s(buf, end);
  if (s.find_first_of(".einn") == std::string::npos) s += ".0";
  return s;
}

int expr_precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kLiteral:
      if (e.literal.kind() == Kind::kInt && e.literal.as_int() < 0) return kPrecUnary;
      if (e.literal.kind() == Kind::kReal && std::signbit(e.literal.as_real())) return kPrecUnary;
      return kPrecAtom;
    case ExprKind::kName:
    case ExprKind::kCall:
    case ExprKind::kTuple:
    case ExprKind::kList:
      return kPrecAtom;
    case ExprKind::kField:
    case ExprKind::kIndex:
      return kPrecPostfix;
    case ExprKind::kUnary:
      return e.unary_op == UnaryOp::kNot ? kPrecNot : kPrecUnary;
    case ExprKind::kBinary:
      return precedence(e.binary_op);
  }
  return kPrecAtom;
}

void render_expr(const Expr& e, int min_prec, std::string& out);

void render_items(const std::vector<Expr>& items, std::string& out) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    render_expr(items[i], 0, out);
  }
}

void render_expr(const Expr& e, int min_prec, std::string& out) {
  const int prec = expr_precedence(e);
  const bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (e.kind) {
    case ExprKind::kLiteral:
      switch (e.literal.kind()) {
        case Kind::kNone: out += "none"; break;
        case Kind::kBool: out += e.literal.as_bool() ? "true" : "false"; break;
        case Kind::kInt: out += std::to_string(e.literal.as_int()); break;
        case Kind::kReal: out += format_real(e.literal.as_real()); break;
        default: out += debug_string(e.literal); break;
      }
      break;
    case ExprKind::kName:
      out += e.name;
      break;
    case ExprKind::kField:
      render_expr(e.args[0], kPrecPostfix, out);
      out += '.';
      out += e.name;
      break;
    case ExprKind::kIndex:
      render_expr(e.args[0], kPrecPostfix, out);
      out += '[';
      render_expr(e.args[1], 0, out);
      out += ']';
      break;
    case ExprKind::kUnary:
      if (e.unary_op == UnaryOp::kNot) {
        out += "not ";
        render_expr(e.args[0], kPrecNot, out);
      } else {
        out += '-';
        render_expr(e.args[0], kPrecUnary, out);
      }
      break;
    case ExprKind::kBinary:
      render_expr(e.args[0], prec, out);
      out += ' ';
      out += binary_op_text(e.binary_op);
      out += ' ';
      render_expr(e.args[1], prec + 1, out);
      break;
    case ExprKind::kCall:
      out += builtin_name(e.builtin);
      out += '(';
      render_items(e.args, out);
      out += ')';
      break;
    case ExprKind::kTuple:
      out += '(';
      render_items(e.args, out);
      if (e.args.size() == 1) out += ',';
      out += ')';
      break;
    case ExprKind::kList:
      out += '[';
      render_items(e.args, out);
      out += ']';
      break;
  }
  if (parens) out += ')';
}

void render_block(const std::vector<Stmt>& block, int depth, std::string& out);

void render_if(const Stmt& s, int depth, std::string& out) {
  out += "if ";
  render_expr(s.expr, 0, out);
  out += " {\n";
  render_block(s.body, depth + 1, out);
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += '}';
  if (s.orelse.size() == 1 && s.orelse[0].kind == StmtKind::kIf) {
    out += " else ";
    render_if(s.orelse[0], depth, out);
    return;
  }
  if (!s.orelse.empty()) {
    out += " else {\n";
    render_block(s.orelse, depth + 1, out);
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += '}';
  }
}

void render_block(const std::vector<Stmt>& block, int depth, std::string& out) {
  for (const auto& s : block) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    switch (s.kind) {
      case StmtKind::kLet:
        out += "let " + s.name + " = ";
        render_expr(s.expr, 0, out);
        out += ";";
        break;
      case StmtKind::kReturn:
        out += "return ";
        render_expr(s.expr, 0, out);
        out += ";";
        break;
      case StmtKind::kIf:
        render_if(s, depth, out);
        break;
      case StmtKind::kFor:
        out += "for " + s.name + " in ";
        render_expr(s.expr, 0, out);
        out += " {\n";
        render_block(s.body, depth + 1, out);
        out.append(static_cast<std::size_t>(depth) * 2, ' ');
        out += '}';
        break;
    }
    out += '\n';
  }
}

class Resolver {
 public:
  explicit Resolver(Function& fn) : fn_(fn) {}

  void run() {
    for (const auto& p : fn_.params) declare(p);
    block(fn_.body);
    fn_.slot_count = static_cast<int>(slots_.size());
  }

 private:
  int declare(const std::string& name) {
    auto [it, inserted] = slots_.emplace(name, static_cast<int>(slots_.size()));
    return it->second;
  }

  void block(std::vector<Stmt>& stmts) {
    for (auto& s : stmts) {
      expr(s.expr);
      switch (s.kind) {
        case StmtKind::kLet:
          s.slot = declare(s.name);
          break;
        case StmtKind::kFor:
          s.slot = declare(s.name);
          block(s.body);
          break;
        case StmtKind::kIf:
          block(s.body);
          block(s.orelse);
          break;
        case StmtKind::kReturn:
          break;
      }
    }
  }

  void expr(Expr& e) {
    for (auto& a : e.args) expr(a);
    switch (e.kind) {
      case ExprKind::kName: {
        auto it = slots_.find(e.name);
        if (it == slots_.end()) {
          throw ParseError(ParseErrorKind::kUndeclaredIdentifier, e.span,
                           "undeclared identifier '" + e.name + "'");
        }
        e.slot = it->second;
        break;
      }
      case ExprKind::kField:
        e.symbol = intern(e.name);
        break;
      case ExprKind::kCall:
        check_arity(e);
        break;
      default:
        break;
    }
  }

  static void check_arity(const Expr& e) {
    const std::size_t n = e.args.size();
    bool ok = true;
    switch (e.builtin) {
      case Builtin::kMin:
      case Builtin::kMax:
        ok = n >= 1;
        break;
      case Builtin::kRange:
        ok = n == 1 || n == 2;
        break;
      default:
        ok = n == 1;
        break;
    }
    if (!ok) {
      throw ParseError(ParseErrorKind::kArity, e.span,
                       "wrong number of arguments (" + std::to_string(n) + ") to '" +
                           std::string(builtin_name(e.builtin)) + "'");
    }
  }

  Function& fn_;
  std::unordered_map<std::string, int> slots_;
};

}  // namespace

ParseError::ParseError(ParseErrorKind kind, Span span, const std::string& message)
    : std::runtime_error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " +
                         message),
      kind_(kind),
      span_(span) {}

EvalError::EvalError(EvalErrorKind kind, Span span, const std::string& message)
    : std::runtime_error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " +
                         message),
      kind_(kind),
      span_(span) {}

std::string_view eval_error_name(EvalErrorKind kind) {
  switch (kind) {
    case EvalErrorKind::kStepBudget: return "budget-exceeded";
    case EvalErrorKind::kValueBudget: return "value-budget-exceeded";
    case EvalErrorKind::kType: return "type-error";
    case EvalErrorKind::kDivisionByZero: return "division-by-zero";
    case EvalErrorKind::kDomain: return "domain-error";
    case EvalErrorKind::kIndex: return "index-error";
    case EvalErrorKind::kKey: return "key-error";
    case EvalErrorKind::kUnbound: return "unbound-variable";
    case EvalErrorKind::kMissingBinding: return "missing-binding";
    case EvalErrorKind::kOverflow: return "integer-overflow";
  }
  return "runtime-error";
}

std::string render(const Expr& expr) {
  std::string out;
  render_expr(expr, 0, out);
  return out;
}

std::string render(const Function& fn) {
  std::string out = "fn " + fn.name + "(";
  for (std::size_t i = 0; i < fn.params.size(); ++i) {
    if (i) out += ", ";
    out += fn.params[i];
  }
  out += ") {\n";
  render_block(fn.body, 1, out);
  out += "}\n";
  return out;
}

void resolve(Function& fn) { Resolver(fn).run(); }

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ScoringProgram ScoringProgram::parse(std::string_view source) {
  return from_ast(parse_function(source));
}

namespace {

// Trees built by hand or by mutation may hold a negation over a numeric
// literal, which the parser always folds. Fold them here too so that
// from_ast and parse agree.
void fold_negations(Expr& e) {
  for (auto& a : e.args) fold_negations(a);
  if (e.kind == ExprKind::kUnary && e.unary_op == UnaryOp::kNeg) {
    Expr folded = Expr::make_unary(UnaryOp::kNeg, e.args[0], e.span);
    if (folded.kind == ExprKind::kLiteral) e = std::move(folded);
  }
}

void fold_negations(std::vector<Stmt>& block) {
  for (auto& s : block) {
    fold_negations(s.expr);
    fold_negations(s.body);
    fold_negations(s.orelse);
  }
}

}  // namespace

ScoringProgram ScoringProgram::from_ast(Function fn) {
  fold_negations(fn.body);
  resolve(fn);
  ScoringProgram p;
  p.source_ = render(fn);
  p.id_ = fnv1a(p.source_);
  p.fn_ = std::make_shared<const Function>(std::move(fn));
  return p;
}

std::string ScoringProgram::id_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(id_));
  return buf;
}

}  // namespace hcevo::lang
