#include <algorithm>
#include <cmath>
#include <functional>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hcevo/lang/interpreter.hpp"
#include "hcevo/lang/mutate.hpp"
#include "hcevo/lang/program.hpp"
#include "random_programs.hpp"

using namespace hcevo;
using namespace hcevo::lang;

namespace {

Value run(std::string_view src, const EvalContext& ctx) {
  return evaluate(ScoringProgram::parse(src), ctx);
}

EvalErrorKind error_kind(std::string_view src, const EvalContext& ctx) {
  try {
    run(src, ctx);
  } catch (const EvalError& e) {
    return e.kind();
  }
  FAIL("expected an evaluation error");
  return EvalErrorKind::kType;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parse: constant program") {
  auto p = ScoringProgram::parse("fn score(x) { return 1 }");
  EvalContext ctx;
  ctx.bind("x", Value::real(42.5));
  Value v = evaluate(p, ctx);
  REQUIRE(v.kind() == Kind::kInt);
  CHECK(v.as_int() == 1);
}

TEST_CASE("parse: server ratio") {
  auto p = ScoringProgram::parse("fn score(s) { return s.capacity / s.size }");
  auto shape = RecordShape::make({"size", "capacity"});
  EvalContext ctx;
  ctx.bind("s", Value::record(shape, {Value::integer(4), Value::integer(10)}));
  Value v = evaluate(p, ctx);
  REQUIRE(v.kind() == Kind::kReal);
  CHECK(v.as_real() == 2.5);
}

TEST_CASE("parse: undeclared identifier carries its position") {
  try {
    ScoringProgram::parse("fn score(x) { return y }");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseErrorKind::kUndeclaredIdentifier);
    CHECK(e.span().line == 1);
    CHECK(e.span().column == 22);
  }
}

TEST_CASE("parse: syntax and arity errors") {
  CHECK_THROWS_AS(ScoringProgram::parse("fn score(x) { return 1 +; }"), ParseError);
  try {
    ScoringProgram::parse("fn score(x) { return abs(x, x) }");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseErrorKind::kArity);
  }
  try {
    ScoringProgram::parse("fn score(x) { return frobnicate(x) }");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseErrorKind::kUndeclaredIdentifier);
  }
}

TEST_CASE("evaluate: pool scorer on a two-row map") {
  const char* real_src = R"(
fn score(row, pool, pools_per_row) {
  let total_sum = 0
  for r in pools_per_row {
    let cap = pools_per_row[r]
    if pool in cap {
      let total_sum = total_sum + cap[pool]
    }
  }
  return -total_sum + pools_per_row[row][pool]
})";
  auto inner0 = Value::map({{Value::integer(0), Value::integer(5)}});
  auto inner1 = Value::map({{Value::integer(0), Value::integer(3)}});
  EvalContext ctx;
  ctx.bind("row", Value::integer(0));
  ctx.bind("pool", Value::integer(0));
  ctx.bind("pools_per_row", Value::map({{Value::integer(0), inner0}, {Value::integer(1), inner1}}));
  Value v = run(real_src, ctx);
  REQUIRE(v.kind() == Kind::kInt);
  CHECK(v.as_int() == -3);
}

TEST_CASE("evaluate: evolved duration formula") {
  const char* src = R"(
fn score(used, curr_size) {
  return floor((used * 0.001 * curr_size + 0.1) * ln(1000) + 1)
})";
  EvalContext ctx;
  ctx.bind("used", Value::integer(999));
  ctx.bind("curr_size", Value::integer(3));
  Value v = run(src, ctx);
  REQUIRE(v.kind() == Kind::kInt);
  CHECK(v.as_int() == 22);
}

TEST_CASE("evaluate: arithmetic semantics") {
  EvalContext ctx;
  CHECK(run("return 7 / 2", ctx).as_real() == 3.5);
  CHECK(run("return 7 // 2", ctx).as_int() == 3);
  CHECK(run("return -7 // 2", ctx).as_int() == -4);
  CHECK(run("return 7.5 // 2", ctx).as_int() == 3);
  CHECK(run("return -7 % 3", ctx).as_int() == 2);
  CHECK(run("return 7 % -3", ctx).as_int() == -2);
  CHECK(run("return min(3, 1.0, 1)", ctx).kind() == Kind::kReal);
  CHECK(run("return max(2, 5, 5.0)", ctx).kind() == Kind::kInt);
  CHECK(run("return len([1, 2, 3])", ctx).as_int() == 3);
  CHECK(run("return sum(range(5))", ctx).as_int() == 10);
  CHECK(run("return sorted([3, 1, 2])[0]", ctx).as_int() == 1);
  CHECK(run("return 2 in [1, 2]", ctx).as_bool());
  CHECK(run("return 3 not in [1, 2]", ctx).as_bool());
  CHECK(run("return (1, 2) == (1, 2.0)", ctx).as_bool());
  CHECK(run("if true { return 1 } else if false { return 2 } return 3", ctx).as_int() == 1);
  CHECK(run("let x = 1", ctx).is_none());
}

TEST_CASE("evaluate: runtime errors") {
  EvalContext ctx;
  CHECK(error_kind("return 1 / 0", ctx) == EvalErrorKind::kDivisionByZero);
  CHECK(error_kind("return 1 // 0", ctx) == EvalErrorKind::kDivisionByZero);
  CHECK(error_kind("return 1.0 / 0.0", ctx) == EvalErrorKind::kDivisionByZero);
  CHECK(error_kind("return 1 % 0", ctx) == EvalErrorKind::kDivisionByZero);
  CHECK(error_kind("return ln(0)", ctx) == EvalErrorKind::kDomain);
  CHECK(error_kind("return ln(-1.5)", ctx) == EvalErrorKind::kDomain);
  CHECK(error_kind("return true + 1.0", ctx) == EvalErrorKind::kType);
  CHECK(error_kind("if 1 { return 1 }", ctx) == EvalErrorKind::kType);
  CHECK(error_kind("return [1][3]", ctx) == EvalErrorKind::kIndex);
  CHECK(error_kind("return 9223372036854775807 + 1", ctx) == EvalErrorKind::kOverflow);
  CHECK(error_kind("if false { let x = 1 } return x", ctx) == EvalErrorKind::kUnbound);
  EvalContext empty;
  CHECK_THROWS_AS(run("fn score(q) { return q }", empty), EvalError);
}

TEST_CASE("evaluate: errors carry the failing span") {
  try {
    run("fn score() {\n  let a = 1\n  return a / 0\n}", EvalContext{});
    FAIL("expected EvalError");
  } catch (const EvalError& e) {
    CHECK(e.span().line == 3);
  }
}

TEST_CASE("evaluate: step budget aborts") {
  EvalContext ctx(Limits{1, 1'000'000});
  CHECK(error_kind("return 1 + 2", ctx) == EvalErrorKind::kStepBudget);

  EvalContext loop(Limits{10'000, 1'000'000});
  const char* src = "let t = 0 for i in range(100000) { let t = t + i } return t";
  CHECK(error_kind(src, loop) == EvalErrorKind::kStepBudget);
  loop.set_limits(Limits{10'000'000, 1'000'000});
  CHECK(run(src, loop).as_int() == 4999950000LL);
}

TEST_CASE("evaluate: value budget aborts") {
  EvalContext ctx(Limits{10'000'000, 100});
  CHECK(error_kind("return len(range(1000))", ctx) == EvalErrorKind::kValueBudget);
}

TEST_CASE("evaluate: mapping iteration is in key order") {
  EvalContext ctx;
  ctx.bind("m", Value::map({{Value::integer(3), Value::integer(0)},
                            {Value::integer(1), Value::integer(0)},
                            {Value::integer(2), Value::integer(0)}}));
  const char* src = "fn score(m) { let acc = 0 for k in m { let acc = acc * 10 + k } return acc }";
  CHECK(run(src, ctx).as_int() == 123);
}

TEST_CASE("render: whitespace is normalised") {
  CHECK(render(ScoringProgram::parse("return  1")) == "fn score() {\n  return 1;\n}\n");
}

TEST_CASE("render: nested if/else golden") {
  const char* src = R"(
fn score(server, row, pool, pools_per_row, rate_server) {
  if rate_server {
    if server.size > 125 { return -100 }
    let s = server.capacity / server.size
    return s*s*s
  } else if pool == none {
    return 0
  } else {
    let t = 0
    for r in sorted(pools_per_row) { let t = t + pools_per_row[r][pool] }
    return -t+(-(1-2))//3 % 2
  }
})";
  auto p = ScoringProgram::parse(src);
  const std::string golden = read_file(std::string(HCEVO_TEST_DATA_DIR) + "/render_nested.golden");
  REQUIRE(!golden.empty());
  CHECK(render(p) == golden);
  CHECK(same_structure(ScoringProgram::parse(render(p)).ast(), p.ast()));
}

TEST_CASE("render: id is a hash of canonical source") {
  auto a = ScoringProgram::parse("return 1+2");
  auto b = ScoringProgram::parse("fn score() {\n return 1 + 2; }");
  CHECK(a.id() == b.id());
  CHECK(a.id() != ScoringProgram::parse("return 2+1").id());
}

TEST_CASE("mutate: constant jitter scales the only constant") {
  auto p = ScoringProgram::parse("return 2.0");
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto r = mutate(p, {}, MutationOp{MutationKind::kConstantJitter, seed});
    REQUIRE_FALSE(r.no_op);
    const auto& ret = r.program.ast().body.at(0).expr;
    REQUIRE(ret.kind == ExprKind::kLiteral);
    const double f = ret.literal.as_real() / 2.0;
    CHECK(f >= 0.5);
    CHECK(f <= 2.0);
    auto again = mutate(p, {}, MutationOp{MutationKind::kConstantJitter, seed});
    CHECK(again.program.id() == r.program.id());
  }
}

TEST_CASE("mutate: threshold guard on the server ratio") {
  auto p = ScoringProgram::parse("fn score(server) { return server.capacity / server.size }");
  bool saw_size_guard = false;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto r = mutate(p, {}, MutationOp{MutationKind::kThresholdGuardInsert, seed});
    REQUIRE_FALSE(r.no_op);
    const auto& body = r.program.ast().body;
    REQUIRE(body.size() == 2);
    const Stmt& guard = body[0].kind == StmtKind::kIf ? body[0] : body[1];
    REQUIRE(guard.kind == StmtKind::kIf);
    REQUIRE(guard.body.size() == 1);
    CHECK(guard.body[0].kind == StmtKind::kReturn);
    CHECK(guard.body[0].expr.literal.as_int() == -100);
    if (body[0].kind == StmtKind::kIf && render(guard.expr).rfind("server.size > ", 0) == 0) {
      saw_size_guard = true;
    }
  }
  CHECK(saw_size_guard);
}

TEST_CASE("mutate: no applicable site is flagged") {
  auto p = ScoringProgram::parse("return none");
  auto r = mutate(p, {}, MutationOp{MutationKind::kConstantJitter, 1});
  CHECK(r.no_op);
  CHECK(r.program.id() == p.id());
  auto c = mutate(p, {}, MutationOp{MutationKind::kParentCrossover, 1});
  CHECK(c.no_op);
}

namespace {

void collect_subtrees(const Expr& e, std::vector<std::string>& out) {
  out.push_back(render(e));
  for (const auto& a : e.args) collect_subtrees(a, out);
}

void collect_subtrees(const std::vector<Stmt>& block, std::vector<std::string>& out) {
  for (const auto& s : block) {
    collect_subtrees(s.expr, out);
    collect_subtrees(s.body, out);
    collect_subtrees(s.orelse, out);
  }
}

}  // namespace

TEST_CASE("mutate: crossover subtrees originate from the inputs") {
  auto a = ScoringProgram::parse("fn score(x, y) { let q = x * 2 return q + y / 3 }");
  auto b = ScoringProgram::parse("fn score(x, y) { let q = 7 return max(x, y) - q * q }");
  std::vector<std::string> origin;
  collect_subtrees(a.ast().body, origin);
  collect_subtrees(b.ast().body, origin);
  std::vector<ScoringProgram> parents{b};
  int applied = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto r = mutate(a, parents, MutationOp{MutationKind::kParentCrossover, seed});
    if (r.no_op) continue;
    ++applied;
    std::vector<std::string> leaves;
    std::function<void(const Expr&)> leaf = [&](const Expr& e) {
      if (e.args.empty()) leaves.push_back(render(e));
      for (const auto& x : e.args) leaf(x);
    };
    for (const auto& s : r.program.ast().body) leaf(s.expr);
    for (const auto& l : leaves) {
      CHECK(std::find(origin.begin(), origin.end(), l) != origin.end());
    }
  }
  CHECK(applied > 0);
}

TEST_CASE("property: purity over 10000 random program/context pairs") {
  testing::ProgramGenerator gen(12345);
  int ok = 0;
  for (int i = 0; i < 10'000; ++i) {
    auto p = gen.program();
    auto ctx = testing::random_context(gen.rng());
    const auto before = ctx.bindings();
    auto outcome = [&]() -> std::pair<std::string, Value> {
      try {
        return {"", evaluate(p, ctx)};
      } catch (const EvalError& e) {
        return {std::string(eval_error_name(e.kind())), Value{}};
      }
    };
    auto first = outcome();
    auto second = outcome();
    REQUIRE(first.first == second.first);
    REQUIRE(identical(first.second, second.second));
    REQUIRE(ctx.bindings().size() == before.size());
    for (std::size_t j = 0; j < before.size(); ++j) {
      REQUIRE(identical(ctx.bindings()[j].second, before[j].second));
    }
    if (first.first.empty()) ++ok;
  }
  // The generator should mostly produce programs that run.
  CHECK(ok > 5'000);
}

TEST_CASE("property: round trip over 10000 random programs") {
  testing::ProgramGenerator gen(777);
  for (int i = 0; i < 10'000; ++i) {
    auto p = gen.program();
    auto q = ScoringProgram::parse(render(p));
    REQUIRE(same_structure(p.ast(), q.ast()));
    REQUIRE(render(q) == render(p));
  }
}

TEST_CASE("property: mutation closure over 10000 random program/op pairs") {
  testing::ProgramGenerator gen(4242);
  std::vector<ScoringProgram> parents{gen.program(), gen.program()};
  for (int i = 0; i < 10'000; ++i) {
    auto p = gen.program();
    const auto kind = kAllMutationKinds[gen.rng().below(std::size(kAllMutationKinds))];
    auto r = mutate(p, parents, MutationOp{kind, gen.rng().next_u64()});
    auto q = ScoringProgram::parse(render(r.program));
    INFO(render(r.program));
    REQUIRE(same_structure(q.ast(), r.program.ast()));
    if (!r.no_op) REQUIRE(r.program.id() != p.id());
    if (i % 7 == 0) parents[i % 2] = r.program;
  }
}
