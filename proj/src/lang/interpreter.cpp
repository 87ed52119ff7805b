#include "hcevo/lang/interpreter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "hcevo/lang/errors.hpp"

namespace hcevo::lang {

namespace {

[[noreturn]] void fail(EvalErrorKind kind, Span span, const std::string& msg) {
  throw EvalError(kind, span, msg);
}

[[noreturn]] void type_error(Span span, const std::string& msg) {
  fail(EvalErrorKind::kType, span, msg);
}

std::string kinds(const Value& a, const Value& b) {
  return std::string(kind_name(a.kind())) + " and " + std::string(kind_name(b.kind()));
}

std::int64_t checked_floor(double r, Span span) {
  const double f = std::floor(r);
  if (!std::isfinite(f) || f < -9.2233720368547758e18 || f >= 9.2233720368547758e18) {
    fail(EvalErrorKind::kOverflow, span, "floor of non-finite or out-of-range real");
  }
  return static_cast<std::int64_t>(f);
}

class Machine {
 public:
  Machine(const Function& fn, const Limits& limits)
      : fn_(fn), limits_(limits), slots_(static_cast<std::size_t>(fn.slot_count)),
        bound_(static_cast<std::size_t>(fn.slot_count), 0) {}

  void bind(std::size_t slot, const Value& v) {
    slots_[slot] = v;
    bound_[slot] = 1;
  }

  Value run() {
    auto result = exec(fn_.body);
    return result ? std::move(*result) : Value();
  }

  std::uint64_t steps() const { return steps_; }
  std::uint64_t values() const { return values_; }

 private:
  void tick(Span span) {
    if (++steps_ > limits_.step_budget) {
      fail(EvalErrorKind::kStepBudget, span,
           "step budget of " + std::to_string(limits_.step_budget) + " exceeded");
    }
  }

  void allocate(std::uint64_t n, Span span) {
    values_ += n;
    if (values_ > limits_.value_budget) {
      fail(EvalErrorKind::kValueBudget, span,
           "value budget of " + std::to_string(limits_.value_budget) + " exceeded");
    }
  }

  bool truth(const Value& v, Span span) {
    if (v.kind() != Kind::kBool) {
      type_error(span, "condition must be boolean, got " + std::string(kind_name(v.kind())));
    }
    return v.as_bool();
  }

  std::optional<Value> exec(const std::vector<Stmt>& block) {
    for (const auto& s : block) {
      tick(s.span);
      switch (s.kind) {
        case StmtKind::kLet:
          bind(static_cast<std::size_t>(s.slot), eval(s.expr));
          break;
        case StmtKind::kReturn:
          return eval(s.expr);
        case StmtKind::kIf: {
          const bool c = truth(eval(s.expr), s.expr.span);
          auto r = exec(c ? s.body : s.orelse);
          if (r) return r;
          break;
        }
        case StmtKind::kFor: {
          const Value iterable = eval(s.expr);
          const auto slot = static_cast<std::size_t>(s.slot);
          if (iterable.kind() == Kind::kList || iterable.kind() == Kind::kTuple) {
            for (const auto& item : iterable.items()) {
              tick(s.span);
              bind(slot, item);
              auto r = exec(s.body);
              if (r) return r;
            }
          } else if (iterable.kind() == Kind::kMap) {
            for (const auto& entry : iterable.as_map().entries) {
              tick(s.span);
              bind(slot, entry.first);
              auto r = exec(s.body);
              if (r) return r;
            }
          } else {
            type_error(s.expr.span,
                       "cannot iterate over " + std::string(kind_name(iterable.kind())));
          }
          break;
        }
      }
    }
    return std::nullopt;
  }

  Value eval(const Expr& e) {
    tick(e.span);
    switch (e.kind) {
      case ExprKind::kLiteral:
        return e.literal;
      case ExprKind::kName: {
        const auto slot = static_cast<std::size_t>(e.slot);
        if (!bound_[slot]) {
          fail(EvalErrorKind::kUnbound, e.span, "variable '" + e.name + "' used before assignment");
        }
        return slots_[slot];
      }
      case ExprKind::kField: {
        const Value obj = eval(e.args[0]);
        if (obj.kind() != Kind::kRecord) {
          type_error(e.span, "field access '." + e.name + "' on " +
                                 std::string(kind_name(obj.kind())));
        }
        const Value* f = obj.as_record().field(e.symbol);
        if (!f) fail(EvalErrorKind::kKey, e.span, "record has no field '" + e.name + "'");
        return *f;
      }
      case ExprKind::kIndex:
        return index(eval(e.args[0]), eval(e.args[1]), e.span);
      case ExprKind::kUnary:
        return unary(e);
      case ExprKind::kBinary:
        return binary(e);
      case ExprKind::kCall:
        return call(e);
      case ExprKind::kTuple:
      case ExprKind::kList: {
        allocate(e.args.size() + 1, e.span);
        std::vector<Value> items;
        items.reserve(e.args.size());
        for (const auto& a : e.args) items.push_back(eval(a));
        return e.kind == ExprKind::kTuple ? Value::tuple(std::move(items))
                                          : Value::list(std::move(items));
      }
    }
    return Value();
  }

  Value index(const Value& obj, const Value& idx, Span span) {
    if (obj.kind() == Kind::kMap) {
      const Value* v = obj.as_map().find(idx);
      if (!v) fail(EvalErrorKind::kKey, span, "key " + debug_string(idx) + " not in mapping");
      return *v;
    }
    if (obj.kind() == Kind::kList || obj.kind() == Kind::kTuple) {
      if (idx.kind() != Kind::kInt) {
        type_error(span, "sequence index must be integer, got " +
                             std::string(kind_name(idx.kind())));
      }
      const auto items = obj.items();
      const auto n = static_cast<std::int64_t>(items.size());
      std::int64_t i = idx.as_int();
      if (i < 0) i += n;
      if (i < 0 || i >= n) {
        fail(EvalErrorKind::kIndex, span,
             "index " + std::to_string(idx.as_int()) + " out of range for length " +
                 std::to_string(n));
      }
      return items[static_cast<std::size_t>(i)];
    }
    type_error(span, "cannot index " + std::string(kind_name(obj.kind())));
  }

  Value unary(const Expr& e) {
    const Value v = eval(e.args[0]);
    if (e.unary_op == UnaryOp::kNot) return Value::boolean(!truth(v, e.span));
    if (v.kind() == Kind::kInt) {
      if (v.as_int() == std::numeric_limits<std::int64_t>::min()) {
        fail(EvalErrorKind::kOverflow, e.span, "integer overflow in negation");
      }
      return Value::integer(-v.as_int());
    }
    if (v.kind() == Kind::kReal) return Value::real(-v.as_real());
    type_error(e.span, "cannot negate " + std::string(kind_name(v.kind())));
  }

  Value binary(const Expr& e) {
    const BinaryOp op = e.binary_op;
    if (op == BinaryOp::kAnd || op == BinaryOp::kOr) {
      const bool lhs = truth(eval(e.args[0]), e.args[0].span);
      if (op == BinaryOp::kAnd && !lhs) return Value::boolean(false);
      if (op == BinaryOp::kOr && lhs) return Value::boolean(true);
      return Value::boolean(truth(eval(e.args[1]), e.args[1].span));
    }
    const Value a = eval(e.args[0]);
    const Value b = eval(e.args[1]);
    switch (op) {
      case BinaryOp::kEq: return Value::boolean(equals(a, b));
      case BinaryOp::kNe: return Value::boolean(!equals(a, b));
      case BinaryOp::kIn: return Value::boolean(contains(b, a, e.span));
      case BinaryOp::kNotIn: return Value::boolean(!contains(b, a, e.span));
      case BinaryOp::kLt:
      case BinaryOp::kLe:
      case BinaryOp::kGt:
      case BinaryOp::kGe: return Value::boolean(order(op, a, b, e.span));
      default: return arithmetic(op, a, b, e.span);
    }
  }

  bool contains(const Value& container, const Value& item, Span span) {
    switch (container.kind()) {
      case Kind::kMap:
        return container.as_map().find(item) != nullptr;
      case Kind::kList:
      case Kind::kTuple:
        for (const auto& x : container.items()) {
          tick(span);
          if (equals(x, item)) return true;
        }
        return false;
      default:
        type_error(span, "membership test on " + std::string(kind_name(container.kind())));
    }
  }

  bool order(BinaryOp op, const Value& a, const Value& b, Span span) {
    if (a.is_number() && b.is_number()) {
      if (a.kind() == Kind::kInt && b.kind() == Kind::kInt) {
        const auto x = a.as_int();
        const auto y = b.as_int();
        switch (op) {
          case BinaryOp::kLt: return x < y;
          case BinaryOp::kLe: return x <= y;
          case BinaryOp::kGt: return x > y;
          default: return x >= y;
        }
      }
      const double x = a.to_double();
      const double y = b.to_double();
      switch (op) {
        case BinaryOp::kLt: return x < y;
        case BinaryOp::kLe: return x <= y;
        case BinaryOp::kGt: return x > y;
        default: return x >= y;
      }
    }
    const bool comparable =
        a.kind() == b.kind() &&
        (a.kind() == Kind::kTuple || a.kind() == Kind::kList || a.kind() == Kind::kText);
    if (!comparable) type_error(span, "cannot order " + kinds(a, b));
    const int c = compare(a, b);
    switch (op) {
      case BinaryOp::kLt: return c < 0;
      case BinaryOp::kLe: return c <= 0;
      case BinaryOp::kGt: return c > 0;
      default: return c >= 0;
    }
  }

  Value arithmetic(BinaryOp op, const Value& a, const Value& b, Span span) {
    if (!a.is_number() || !b.is_number()) {
      type_error(span, "operator '" + std::string(binary_op_text(op)) + "' on " + kinds(a, b));
    }
    const bool ints = a.kind() == Kind::kInt && b.kind() == Kind::kInt;
    if (ints) {
      const std::int64_t x = a.as_int();
      const std::int64_t y = b.as_int();
      std::int64_t r = 0;
      switch (op) {
        case BinaryOp::kAdd:
          if (__builtin_add_overflow(x, y, &r)) fail(EvalErrorKind::kOverflow, span, "integer overflow");
          return Value::integer(r);
        case BinaryOp::kSub:
          if (__builtin_sub_overflow(x, y, &r)) fail(EvalErrorKind::kOverflow, span, "integer overflow");
          return Value::integer(r);
        case BinaryOp::kMul:
          if (__builtin_mul_overflow(x, y, &r)) fail(EvalErrorKind::kOverflow, span, "integer overflow");
          return Value::integer(r);
        case BinaryOp::kDiv:
          if (y == 0) fail(EvalErrorKind::kDivisionByZero, span, "division by zero");
          return Value::real(static_cast<double>(x) / static_cast<double>(y));
        case BinaryOp::kFloorDiv: {
          if (y == 0) fail(EvalErrorKind::kDivisionByZero, span, "integer division by zero");
          if (x == std::numeric_limits<std::int64_t>::min() && y == -1) {
            fail(EvalErrorKind::kOverflow, span, "integer overflow");
          }
          std::int64_t q = x / y;
          if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
          return Value::integer(q);
        }
        case BinaryOp::kMod: {
          if (y == 0) fail(EvalErrorKind::kDivisionByZero, span, "integer modulo by zero");
          if (y == -1) return Value::integer(0);
          std::int64_t m = x % y;
          if (m != 0 && ((m < 0) != (y < 0))) m += y;
          return Value::integer(m);
        }
        default:
          break;
      }
    }
    const double x = a.to_double();
    const double y = b.to_double();
    switch (op) {
      case BinaryOp::kAdd: return Value::real(x + y);
      case BinaryOp::kSub: return Value::real(x - y);
      case BinaryOp::kMul: return Value::real(x * y);
      case BinaryOp::kDiv:
        if (y == 0.0) fail(EvalErrorKind::kDivisionByZero, span, "division by zero");
        return Value::real(x / y);
      case BinaryOp::kFloorDiv:
        if (y == 0.0) fail(EvalErrorKind::kDivisionByZero, span, "division by zero");
        return Value::integer(checked_floor(x / y, span));
      case BinaryOp::kMod: {
        if (y == 0.0) fail(EvalErrorKind::kDivisionByZero, span, "modulo by zero");
        double m = std::fmod(x, y);
        if (m != 0.0 && ((m < 0) != (y < 0))) m += y;
        return Value::real(m);
      }
      default:
        break;
    }
    type_error(span, "bad arithmetic operator");
  }

  bool less(const Value& a, const Value& b, Span span) { return order(BinaryOp::kLt, a, b, span); }

  Value call(const Expr& e) {
    std::vector<Value> args;
    args.reserve(e.args.size());
    for (const auto& a : e.args) args.push_back(eval(a));
    const Span span = e.span;
    switch (e.builtin) {
      case Builtin::kMin:
      case Builtin::kMax: {
        std::span<const Value> pool = args;
        if (args.size() == 1) {
          if (args[0].kind() != Kind::kList && args[0].kind() != Kind::kTuple) {
            type_error(span, std::string(builtin_name(e.builtin)) + " of a single " +
                                 std::string(kind_name(args[0].kind())));
          }
          pool = args[0].items();
        }
        if (pool.empty()) fail(EvalErrorKind::kDomain, span, "min/max of empty sequence");
        std::size_t best = 0;
        for (std::size_t i = 1; i < pool.size(); ++i) {
          tick(span);
          const bool better = e.builtin == Builtin::kMin ? less(pool[i], pool[best], span)
                                                         : less(pool[best], pool[i], span);
          if (better) best = i;
        }
        if (pool.size() == 1) {
          // Single candidates are still type-checked.
          less(pool[0], pool[0], span);
        }
        return pool[best];
      }
      case Builtin::kAbs: {
        const Value& v = args[0];
        if (v.kind() == Kind::kInt) {
          if (v.as_int() == std::numeric_limits<std::int64_t>::min()) {
            fail(EvalErrorKind::kOverflow, span, "integer overflow in abs");
          }
          return Value::integer(v.as_int() < 0 ? -v.as_int() : v.as_int());
        }
        if (v.kind() == Kind::kReal) return Value::real(std::fabs(v.as_real()));
        type_error(span, "abs of " + std::string(kind_name(v.kind())));
      }
      case Builtin::kLen: {
        const Value& v = args[0];
        switch (v.kind()) {
          case Kind::kList:
          case Kind::kTuple: return Value::integer(static_cast<std::int64_t>(v.items().size()));
          case Kind::kMap:
            return Value::integer(static_cast<std::int64_t>(v.as_map().entries.size()));
          default: type_error(span, "len of " + std::string(kind_name(v.kind())));
        }
      }
      case Builtin::kFloor: {
        const Value& v = args[0];
        if (v.kind() == Kind::kInt) return v;
        if (v.kind() == Kind::kReal) return Value::integer(checked_floor(v.as_real(), span));
        type_error(span, "floor of " + std::string(kind_name(v.kind())));
      }
      case Builtin::kLn: {
        const Value& v = args[0];
        if (!v.is_number()) type_error(span, "ln of " + std::string(kind_name(v.kind())));
        const double x = v.to_double();
        if (!(x > 0.0)) fail(EvalErrorKind::kDomain, span, "ln of non-positive value");
        return Value::real(std::log(x));
      }
      case Builtin::kSorted: {
        const Value& v = args[0];
        std::vector<Value> items;
        if (v.kind() == Kind::kList || v.kind() == Kind::kTuple) {
          items.assign(v.items().begin(), v.items().end());
        } else if (v.kind() == Kind::kMap) {
          for (const auto& entry : v.as_map().entries) items.push_back(entry.first);
        } else {
          type_error(span, "sorted of " + std::string(kind_name(v.kind())));
        }
        allocate(items.size() + 1, span);
        // Type-check pairwise order once, then sort with the total order.
        for (std::size_t i = 1; i < items.size(); ++i) less(items[i - 1], items[i], span);
        steps_ += items.size();
        std::stable_sort(items.begin(), items.end(),
                         [](const Value& x, const Value& y) { return compare(x, y) < 0; });
        return Value::list(std::move(items));
      }
      case Builtin::kSum: {
        const Value& v = args[0];
        if (v.kind() != Kind::kList && v.kind() != Kind::kTuple) {
          type_error(span, "sum of " + std::string(kind_name(v.kind())));
        }
        Value acc = Value::integer(0);
        for (const auto& x : v.items()) {
          tick(span);
          acc = arithmetic(BinaryOp::kAdd, acc, x, span);
        }
        return acc;
      }
      case Builtin::kRange: {
        for (const auto& a : args) {
          if (a.kind() != Kind::kInt) {
            type_error(span, "range bound must be integer, got " + std::string(kind_name(a.kind())));
          }
        }
        const std::int64_t lo = args.size() == 2 ? args[0].as_int() : 0;
        const std::int64_t hi = args.size() == 2 ? args[1].as_int() : args[0].as_int();
        const std::uint64_t n = hi > lo ? static_cast<std::uint64_t>(hi - lo) : 0;
        allocate(n + 1, span);
        std::vector<Value> items;
        items.reserve(n);
        for (std::int64_t i = lo; i < hi; ++i) items.push_back(Value::integer(i));
        return Value::list(std::move(items));
      }
    }
    type_error(span, "unknown builtin");
  }

  const Function& fn_;
  const Limits& limits_;
  std::vector<Value> slots_;
  std::vector<char> bound_;
  std::uint64_t steps_ = 0;
  std::uint64_t values_ = 0;
};

struct StatsGuard {
  const Machine& m;
  EvalStats* stats;
  ~StatsGuard() {
    if (stats) {
      stats->steps += m.steps();
      stats->values += m.values();
      stats->calls += 1;
    }
  }
};

}  // namespace

EvalContext& EvalContext::bind(std::string name, Value value) {
  for (auto& [n, v] : bindings_) {
    if (n == name) {
      v = std::move(value);
      return *this;
    }
  }
  bindings_.emplace_back(std::move(name), std::move(value));
  return *this;
}

const Value* EvalContext::find(std::string_view name) const {
  for (const auto& [n, v] : bindings_) {
    if (n == name) return &v;
  }
  return nullptr;
}

Value evaluate(const ScoringProgram& program, const EvalContext& ctx, EvalStats* stats) {
  const Function& fn = program.ast();
  Machine m(fn, ctx.limits());
  StatsGuard guard{m, stats};
  for (std::size_t i = 0; i < fn.params.size(); ++i) {
    const Value* v = ctx.find(fn.params[i]);
    if (!v) {
      throw EvalError(EvalErrorKind::kMissingBinding, {},
                      "no binding for parameter '" + fn.params[i] + "'");
    }
    m.bind(i, *v);
  }
  return m.run();
}

BoundScorer::BoundScorer(ScoringProgram program, std::span<const std::string_view> names)
    : program_(std::move(program)) {
  for (const auto& p : program_.ast().params) {
    auto it = std::find(names.begin(), names.end(), p);
    if (it == names.end()) {
      throw EvalError(EvalErrorKind::kMissingBinding, {},
                      "parameter '" + p + "' is not provided by this backbone");
    }
    arg_of_param_.push_back(static_cast<std::size_t>(it - names.begin()));
  }
}

bool BoundScorer::uses(std::size_t index) const {
  return std::find(arg_of_param_.begin(), arg_of_param_.end(), index) != arg_of_param_.end();
}

Value BoundScorer::operator()(std::span<const Value> args, const Limits& limits,
                              EvalStats* stats) const {
  Machine m(program_.ast(), limits);
  StatsGuard guard{m, stats};
  for (std::size_t i = 0; i < arg_of_param_.size(); ++i) m.bind(i, args[arg_of_param_[i]]);
  return m.run();
}

}  // namespace hcevo::lang
