#include <algorithm>
#include <string>

#include "doctest.h"
#include "hcevo/lang/program.hpp"
#include "hcevo/problems/registry.hpp"
#include "hcevo/problems/toy.hpp"

using namespace hcevo;
using namespace hcevo::problems;

TEST_CASE("toy: parse and score") {
  auto in = toy::parse_toy("3 2.5\n0\n1\n-1.5\n");
  CHECK(in.target == 2.5);
  CHECK(in.xs == std::vector<double>{0.0, 1.0, -1.5});
  CHECK_THROWS_AS(toy::parse_toy("2 1\n0\n"), InputError);
  CHECK_THROWS_AS(toy::parse_toy("1 x\n0\n"), InputError);
  CHECK_THROWS_AS(toy::parse_toy("1 1\nnan\n"), InputError);

  toy::Guesses g;
  g.ys = {2.5, 2.0, 3.0};
  CHECK(toy::toy_score(in, g) == toy::kToyCeiling - 1000);
  g.ys.pop_back();
  CHECK_THROWS_AS(toy::toy_score(in, g), InvalidSolution);
}

TEST_CASE("toy: fitness of the base scorer and of the exact answer") {
  const auto& problem = registry_lookup("toy");
  auto in = problem.parse("2 4.25\n1\n2\n");
  sandbox::RunControl control;
  CHECK(fitness(problem, *in, lang::ScoringProgram::parse(problem.base_scorer()), control) ==
        toy::kToyCeiling - 6500);
  CHECK(fitness(problem, *in, lang::ScoringProgram::parse("fn score(x) { return 4.25; }"), control) ==
        toy::kToyCeiling);
}

TEST_CASE("registry: lookup and listing") {
  CHECK(registry_lookup("rides2018").name() == "rides2018");
  CHECK_THROWS_AS(registry_lookup("unknown"), NotFound);
  auto names = registry_names();
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"datacenter2015", "fishing_ahc039", "rides2018", "toy",
                                          "traffic2021"});
  for (const auto& name : names) {
    const auto& p = registry_lookup(name);
    CHECK(p.name() == name);
    CHECK_NOTHROW(lang::ScoringProgram::parse(p.base_scorer()));
    CHECK_FALSE(p.describe_backbone().empty());
    CHECK_FALSE(p.bindings().empty());
  }
}

TEST_CASE("registry: problem options") {
  CHECK(make_problem("datacenter2015", {{"pool_order", "server_index"}})->name() == "datacenter2015");
  CHECK_THROWS_AS(make_problem("datacenter2015", {{"pool_order", "random"}}), std::invalid_argument);
  CHECK_THROWS_AS(make_problem("fishing_ahc039", {{"cell_sizes", nlohmann::json::array()}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_problem("fishing_ahc039", {{"cell_sizes", {0}}}), std::invalid_argument);
  CHECK_NOTHROW(make_problem("fishing_ahc039", {{"cell_sizes", {1500, 2000}}, {"max_vertices", 50}}));
  CHECK_THROWS_AS(make_problem("nope", nlohmann::json::object()), NotFound);
}

TEST_CASE("load_instance: file name becomes the id") {
  const auto& problem = registry_lookup("toy");
  auto in = load_instance(problem, HCEVO_ASSET_DIR "/instances/toy_small.in");
  CHECK(in->id() == "toy_small.in");
  CHECK_THROWS(load_instance(problem, HCEVO_TEST_DATA_DIR "/missing.in"));
}
