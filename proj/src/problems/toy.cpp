#include "hcevo/problems/toy.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "hcevo/lang/interpreter.hpp"
#include "hcevo/problems/line_reader.hpp"

namespace hcevo::problems::toy {

namespace {

constexpr std::array<std::string_view, 1> kNames = {"x"};

double parse_real(std::string_view token, int line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v)) {
    throw InputError("line " + std::to_string(line) + ": malformed number '" + std::string(token) + "'");
  }
  return v;
}

}  // namespace

ToyInstance parse_toy(std::string_view text) {
  LineReader reader(text);
  auto head = reader.fields(2, "header n target");
  const auto n = reader.integer(head[0], "count");
  if (n < 0) throw InputError("line 1: count must be non-negative");
  ToyInstance in;
  in.target = parse_real(head[1], 1);
  for (std::int64_t i = 0; i < n; ++i) {
    auto f = reader.fields(1, "x");
    in.xs.push_back(parse_real(f[0], reader.line_number()));
  }
  reader.expect_end();
  return in;
}

std::int64_t toy_score(const ToyInstance& in, const Guesses& guesses) {
  if (guesses.ys.size() != in.xs.size()) throw InvalidSolution("one guess per x is required");
  std::int64_t penalty = 0;
  for (double y : guesses.ys) {
    const double err = std::fabs(y - in.target) * 1000.0;
    // Keep the sum finite for wild guesses.
    penalty += std::isfinite(err) && err < 1e12 ? std::llround(err) : 1'000'000'000'000LL;
  }
  return kToyCeiling - penalty;
}

std::string Guesses::export_text() const {
  std::ostringstream out;
  out.precision(17);
  for (double y : ys) out << y << '\n';
  return out.str();
}

std::shared_ptr<const Instance> ToyProblem::parse(std::string_view bytes) const {
  return std::make_shared<ToyInstance>(parse_toy(bytes));
}

std::unique_ptr<Solution> ToyProblem::run_backbone(const Instance& instance,
                                                   const lang::ScoringProgram& program,
                                                   sandbox::RunControl& control) const {
  const auto& in = instance_as<ToyInstance>(instance);
  lang::BoundScorer scorer(program, kNames);
  auto out = std::make_unique<Guesses>();
  std::array<lang::Value, 1> args;
  for (double x : in.xs) {
    control.checkpoint();
    args[0] = lang::Value::real(x);
    const lang::Value y = control.score(scorer, args);
    if (!y.is_number()) throw sandbox::Rejected("guess must be a number");
    out->ys.push_back(y.to_double());
  }
  return out;
}

std::int64_t ToyProblem::evaluate(const Instance& instance, const Solution& solution) const {
  return toy_score(instance_as<ToyInstance>(instance), solution_as<Guesses>(solution));
}

std::span<const std::string_view> ToyProblem::bindings() const { return kNames; }

std::string_view ToyProblem::base_scorer() const { return "fn score(x) {\n  return 1.0;\n}\n"; }

std::string_view ToyProblem::describe_backbone() const {
  return R"(Task: for each input x, guess a hidden target value. The score is 1000000
minus the total absolute error measured in thousandths.

Scorer parameters:
  x  real input
Return a number.
)";
}

}  // namespace hcevo::problems::toy
