#include "hcevo/lang/mutate.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <vector>

#include "hcevo/rng.hpp"

namespace hcevo::lang {

namespace {

using Scope = std::shared_ptr<const std::vector<std::string>>;

struct ExprSite {
  Expr* expr;
  Scope scope;
  bool numeric;  // the value at this position is used as a number
};

struct InsertSite {
  std::vector<Stmt>* block;
  std::size_t pos;
  Scope scope;
};

bool numeric_children(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kBinary:
      switch (e.binary_op) {
        case BinaryOp::kAnd:
        case BinaryOp::kOr:
        case BinaryOp::kIn:
        case BinaryOp::kNotIn:
        case BinaryOp::kEq:
        case BinaryOp::kNe:
          return false;
        default:
          return true;
      }
    case ExprKind::kUnary:
      return e.unary_op == UnaryOp::kNeg;
    case ExprKind::kCall:
      return e.builtin == Builtin::kMin || e.builtin == Builtin::kMax ||
             e.builtin == Builtin::kAbs || e.builtin == Builtin::kFloor ||
             e.builtin == Builtin::kLn;
    default:
      return false;
  }
}

class SiteCollector {
 public:
  std::vector<ExprSite> exprs;
  std::vector<InsertSite> inserts;

  void run(Function& fn) {
    auto names = std::make_shared<std::vector<std::string>>(fn.params);
    scope_ = names;
    block(fn.body);
  }

 private:
  void declare(const std::string& name) {
    if (std::find(scope_->begin(), scope_->end(), name) != scope_->end()) return;
    auto next = std::make_shared<std::vector<std::string>>(*scope_);
    next->push_back(name);
    scope_ = next;
  }

  void block(std::vector<Stmt>& stmts) {
    for (std::size_t i = 0; i <= stmts.size(); ++i) {
      inserts.push_back({&stmts, i, scope_});
      if (i == stmts.size()) break;
      Stmt& s = stmts[i];
      expr(s.expr, s.kind == StmtKind::kLet || s.kind == StmtKind::kReturn);
      switch (s.kind) {
        case StmtKind::kLet:
          declare(s.name);
          break;
        case StmtKind::kFor:
          declare(s.name);
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

  void expr(Expr& e, bool numeric) {
    exprs.push_back({&e, scope_, numeric});
    const bool child_numeric = numeric_children(e);
    for (auto& a : e.args) expr(a, child_numeric);
  }

  Scope scope_;
};

void free_names(const Expr& e, std::set<std::string>& out) {
  if (e.kind == ExprKind::kName) out.insert(e.name);
  for (const auto& a : e.args) free_names(a, out);
}

bool fits_scope(const Expr& e, const Scope& scope) {
  std::set<std::string> names;
  free_names(e, names);
  for (const auto& n : names) {
    if (std::find(scope->begin(), scope->end(), n) == scope->end()) return false;
  }
  return true;
}

bool is_numeric_literal(const Expr& e) {
  return e.kind == ExprKind::kLiteral &&
         (e.literal.kind() == Kind::kInt || e.literal.kind() == Kind::kReal);
}

double round_to(double x, double step) { return std::round(x / step) * step; }

Expr random_constant(Rng& rng) {
  if (rng.chance(0.4)) return Expr::make_literal(Value::integer(rng.between(0, 100)));
  const double mag = std::pow(10.0, rng.uniform(-2.0, 3.0));
  double v = round_to(mag, mag >= 1.0 ? 0.01 : 0.0001);
  if (v == 0.0) v = 0.01;
  return Expr::make_literal(Value::real(v));
}

// Terminal candidates in scope: variables, field accesses and indexing
// expressions taken from the given trees.
std::vector<const Expr*> terminal_pool(const std::vector<ExprSite>& sites, const Scope& scope) {
  std::vector<const Expr*> pool;
  for (const auto& s : sites) {
    const Expr& e = *s.expr;
    if (e.kind != ExprKind::kName && e.kind != ExprKind::kField && e.kind != ExprKind::kIndex) {
      continue;
    }
    if (!fits_scope(e, scope)) continue;
    bool dup = false;
    for (const Expr* p : pool) {
      if (same_structure(*p, e)) {
        dup = true;
        break;
      }
    }
    if (!dup) pool.push_back(&e);
  }
  return pool;
}

template <typename T>
const T& pick(const std::vector<T>& v, Rng& rng) {
  return v[rng.below(v.size())];
}

Expr random_expr(Rng& rng, const std::vector<const Expr*>& pool, int depth) {
  if (depth == 0 || rng.chance(0.4)) {
    if (!pool.empty() && rng.chance(0.7)) return *pick(pool, rng);
    return random_constant(rng);
  }
  const std::size_t choice = rng.below(6);
  Expr lhs = random_expr(rng, pool, depth - 1);
  Expr rhs = random_expr(rng, pool, depth - 1);
  switch (choice) {
    case 0: return Expr::make_binary(BinaryOp::kAdd, std::move(lhs), std::move(rhs));
    case 1: return Expr::make_binary(BinaryOp::kSub, std::move(lhs), std::move(rhs));
    case 2: return Expr::make_binary(BinaryOp::kMul, std::move(lhs), std::move(rhs));
    case 3: return Expr::make_binary(BinaryOp::kDiv, std::move(lhs), std::move(rhs));
    case 4: {
      std::vector<Expr> args;
      args.push_back(std::move(lhs));
      args.push_back(std::move(rhs));
      return Expr::make_call(Builtin::kMin, std::move(args));
    }
    default: {
      std::vector<Expr> args;
      args.push_back(std::move(lhs));
      args.push_back(std::move(rhs));
      return Expr::make_call(Builtin::kMax, std::move(args));
    }
  }
}

std::vector<ExprSite> numeric_sites(const std::vector<ExprSite>& all) {
  std::vector<ExprSite> out;
  for (const auto& s : all) {
    if (s.numeric) out.push_back(s);
  }
  return out;
}

class Mutator {
 public:
  Mutator(const ScoringProgram& program, std::span<const ScoringProgram> parents,
          const MutationOp& op)
      : program_(program), parents_(parents), op_(op), rng_(op.rng_seed), fn_(program.ast()) {
    sites_.run(fn_);
  }

  MutationResult run() {
    bool applied = false;
    switch (op_.kind) {
      case MutationKind::kConstantJitter: applied = constant_jitter(); break;
      case MutationKind::kSubtreeReplace: applied = subtree_replace(); break;
      case MutationKind::kThresholdGuardInsert: applied = threshold_guard(); break;
      case MutationKind::kLinearRecombine: applied = linear_recombine(); break;
      case MutationKind::kParentCrossover: applied = parent_crossover(); break;
    }
    if (!applied) return no_op();
    try {
      ScoringProgram out = ScoringProgram::from_ast(std::move(fn_));
      if (same_structure(out.ast(), program_.ast())) return no_op();
      return MutationResult{std::move(out), false, detail_};
    } catch (const ParseError& e) {
      detail_ = std::string("mutation produced an unresolvable program: ") + e.what();
      return no_op();
    }
  }

 private:
  MutationResult no_op() {
    if (detail_.empty()) detail_ = "no applicable site";
    return MutationResult{program_, true, detail_};
  }

  bool constant_jitter() {
    std::vector<ExprSite> lits;
    for (const auto& s : sites_.exprs) {
      if (is_numeric_literal(*s.expr)) lits.push_back(s);
    }
    if (lits.empty()) return false;
    Expr& e = *pick(lits, rng_).expr;
    const double f = rng_.uniform(0.5, 2.0);
    if (e.literal.kind() == Kind::kInt) {
      const std::int64_t n = e.literal.as_int();
      const double scaled = static_cast<double>(n) * f;
      if (std::fabs(scaled) > 9.0e15) return false;
      std::int64_t m = std::llround(scaled);
      if (m == n) m = f >= 1.0 ? n + 1 : n - 1;
      e.literal = Value::integer(m);
    } else {
      const double r = e.literal.as_real();
      double x = r == 0.0 ? f - 1.25 : r * f;
      if (!std::isfinite(x) || std::fabs(x) > 1e300) return false;
      if (x == r) x = r + 1e-3;
      e.literal = Value::real(x);
    }
    detail_ = "constant-jitter factor " + std::to_string(f);
    return true;
  }

  bool subtree_replace() {
    auto sites = numeric_sites(sites_.exprs);
    if (sites.empty()) return false;
    const ExprSite site = pick(sites, rng_);
    const auto pool = terminal_pool(sites_.exprs, site.scope);
    for (int attempt = 0; attempt < 8; ++attempt) {
      Expr repl = random_expr(rng_, pool, 2);
      if (!same_structure(repl, *site.expr)) {
        *site.expr = std::move(repl);
        detail_ = "subtree-replace";
        return true;
      }
    }
    return false;
  }

  bool threshold_guard() {
    const InsertSite site = pick(sites_.inserts, rng_);
    const auto pool = terminal_pool(sites_.exprs, site.scope);
    if (pool.empty()) return false;
    // Field and index terms are weighted over bare variables.
    std::vector<const Expr*> weighted;
    for (const Expr* p : pool) {
      const int w = p->kind == ExprKind::kName ? 1 : 3;
      for (int i = 0; i < w; ++i) weighted.push_back(p);
    }
    const Expr& term = *pick(weighted, rng_);
    Expr threshold = random_constant(rng_);
    const BinaryOp cmp = rng_.chance(0.7) ? BinaryOp::kGt : BinaryOp::kLt;
    Stmt guard;
    guard.kind = StmtKind::kIf;
    guard.expr = Expr::make_binary(cmp, term, std::move(threshold));
    Stmt ret;
    ret.kind = StmtKind::kReturn;
    ret.expr = Expr::make_literal(Value::integer(-100));
    guard.body.push_back(std::move(ret));
    site.block->insert(site.block->begin() + static_cast<std::ptrdiff_t>(site.pos),
                       std::move(guard));
    detail_ = "threshold-guard-insert";
    return true;
  }

  bool linear_recombine() {
    auto sites = numeric_sites(sites_.exprs);
    if (sites.empty()) return false;
    const ExprSite site = pick(sites, rng_);
    std::vector<const Expr*> partners;
    for (const auto& s : sites) {
      if (s.expr == site.expr || is_numeric_literal(*s.expr)) continue;
      if (!fits_scope(*s.expr, site.scope)) continue;
      partners.push_back(s.expr);
    }
    if (partners.empty()) {
      partners = terminal_pool(sites_.exprs, site.scope);
    }
    if (partners.empty()) return false;
    Expr other = *pick(partners, rng_);
    const double w1 = round_to(rng_.uniform(0.5, 1.5), 0.001);
    double w2 = round_to(rng_.uniform(-1.0, 1.0), 0.001);
    if (w2 == 0.0) w2 = 0.001;
    Expr original = std::move(*site.expr);
    *site.expr = Expr::make_binary(
        BinaryOp::kAdd,
        Expr::make_binary(BinaryOp::kMul, Expr::make_literal(Value::real(w1)), std::move(original)),
        Expr::make_binary(BinaryOp::kMul, Expr::make_literal(Value::real(w2)), std::move(other)));
    detail_ = "linear-recombine";
    return true;
  }

  bool parent_crossover() {
    if (parents_.empty()) {
      detail_ = "parent-crossover needs at least one parent";
      return false;
    }
    const ScoringProgram& donor = parents_[rng_.below(parents_.size())];
    Function donor_fn = donor.ast();
    SiteCollector donor_sites;
    donor_sites.run(donor_fn);
    auto targets = numeric_sites(sites_.exprs);
    auto donors = numeric_sites(donor_sites.exprs);
    if (targets.empty() || donors.empty()) return false;
    for (int attempt = 0; attempt < 32; ++attempt) {
      const ExprSite& t = pick(targets, rng_);
      const ExprSite& d = pick(donors, rng_);
      if (same_structure(*t.expr, *d.expr) || !fits_scope(*d.expr, t.scope)) continue;
      *t.expr = *d.expr;
      detail_ = "parent-crossover from " + donor.id_hex();
      return true;
    }
    return false;
  }

  const ScoringProgram& program_;
  std::span<const ScoringProgram> parents_;
  MutationOp op_;
  Rng rng_;
  Function fn_;
  SiteCollector sites_;
  std::string detail_;
};

}  // namespace

std::string_view mutation_kind_name(MutationKind kind) {
  switch (kind) {
    case MutationKind::kConstantJitter: return "constant-jitter";
    case MutationKind::kSubtreeReplace: return "subtree-replace";
    case MutationKind::kThresholdGuardInsert: return "threshold-guard-insert";
    case MutationKind::kLinearRecombine: return "linear-recombine";
    case MutationKind::kParentCrossover: return "parent-crossover";
  }
  return "?";
}

std::optional<MutationKind> mutation_kind_from_name(std::string_view name) {
  for (auto k : kAllMutationKinds) {
    if (mutation_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

MutationResult mutate(const ScoringProgram& program, std::span<const ScoringProgram> parents,
                      const MutationOp& op) {
  return Mutator(program, parents, op).run();
}

}  // namespace hcevo::lang
