#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lctrs/engine.hpp"
#include "lctrs/enum_solver.hpp"
#include "lctrs/errors.hpp"
#include "lctrs/trace.hpp"
#include "support.hpp"

using namespace lctrs;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string problem_path(const std::string& name) { return std::string(LCTRS_PROBLEMS_DIR) + "/" + name; }

const char* kRho =
    "theory int\n"
    "sig sum : Int -> Int\n"
    "sig f : Int -> Int\n"
    "rule rule1: sum(x) -> 0 [0 >= x] vars {x}\n"
    "rule rule2: sum(x) -> x + sum(x + -1) [x > 0] vars {x}\n"
    "rule rho': f(x') -> x' + y' [y' >= x'] vars {x', y'}\n"
    "ect c: X {x} term f(x) phi x > 2\n";

}  // namespace

TEST_CASE("the sum problem parses") {
  ProblemFile p = load_problem(problem_path("sum.lctrs"));
  CHECK(p.model.finite());
  CHECK(p.model.modulus() == 16);
  CHECK(p.system.user_rules().size() == 2);
  CHECK(p.system.rules.size() > 2);
  CHECK(p.find_query("start"));
  CHECK_FALSE(p.find_query("nope"));
  CHECK(p.find_symbol("sum"));
}

TEST_CASE("print then parse is a fixpoint") {
  for (const std::string& text : {std::string(kRho), slurp(problem_path("sum.lctrs")), slurp(problem_path("sum_int.lctrs"))}) {
    ProblemFile p = parse_problem(text);
    std::string once = print_problem(p);
    ProblemFile q = parse_problem(once);
    CHECK(print_problem(q) == once);
    CHECK(q.system.rules.size() == p.system.rules.size());
    REQUIRE(q.queries.size() == p.queries.size());
    for (std::size_t i = 0; i < p.queries.size(); ++i) CHECK(q.queries[i] == p.queries[i]);
  }
}

TEST_CASE("validation errors name the offending object") {
  try {
    parse_problem("theory int\nsig sum : Int -> Int\nrule bad: sum(x) -> 0 [0 >= x] vars {}\n");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.id == "bad");
  }
  CHECK_THROWS_AS(parse_problem("theory int\nsig f : Int -> Int\nect c: term f(x) phi x > 0\n"), ValidationError);
  CHECK_THROWS_AS(parse_problem("theory int\nsig f : Int * Int -> Int\nrule nl: f(x, x) -> x\n"), ValidationError);
  CHECK_THROWS_AS(parse_problem("theory int\nsig f : Int -> Int\nsig f : Int -> Int\n"), ValidationError);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_problem("theory int\nsig sum : Int -> Int\nrule r: sum(x) -> [x > 0]\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.col > 1);
    CHECK_FALSE(e.expected.empty());
  }
  CHECK_THROWS_AS(parse_problem("theory reals\n"), ParseError);
  CHECK_THROWS_AS(parse_problem("bogus\n"), ParseError);
}

TEST_CASE("comments and connectives") {
  ProblemFile p = parse_problem(
      "# header\n"
      "theory intmod 7\n"
      "sig f : Int -> Int  # trailing\n"
      "ect c: X {x} term f(x) phi not (x = 0) \\/ x > 3 => x >= 1\n");
  const ECTerm* c = p.find_query("c");
  REQUIRE(c);
  CHECK(is_constraint(c->constraint.body));
  Term t = parse_term(p, "x * 2 - 1");
  CHECK(t.sort() == int_sort());
}

TEST_CASE("golden traces replay") {
  ProblemFile p = load_problem(problem_path("sum.lctrs"));
  EnumerationBackend e(p.model);
  for (const std::string q : {"start", "split"}) {
    for (Mode m : {Mode::Partial, Mode::MostGeneral}) {
      std::string golden = slurp(problem_path("sum." + q + "." + mode_name(m) + ".jsonl"));
      std::vector<TraceEntry> got = trace_of(reduce(*p.find_query(q), p.system, m, e));
      CHECK(to_jsonl(got) == golden);
      CHECK(diff_traces(parse_trace(golden), got).empty());
    }
  }
}

TEST_CASE("trace entries round-trip") {
  ProblemFile p = load_problem(problem_path("sum.lctrs"));
  EnumerationBackend e(p.model);
  std::vector<TraceEntry> t = trace_of(reduce(*p.find_query("split"), p.system, Mode::Partial, e));
  REQUIRE_FALSE(t.empty());
  CHECK(parse_trace(to_jsonl(t)) == t);
  CHECK(t[0].rule == "rule1");
  CHECK(t[0].position == Position{2});
  CHECK(t[0].gate == "sat");

  std::vector<TraceEntry> changed = t;
  changed[0].rule = "rule2";
  CHECK_FALSE(diff_traces(t, changed).empty());
  changed.pop_back();
  CHECK_FALSE(diff_traces(t, changed).empty());
  CHECK_THROWS_AS(parse_trace("{\"mode\": 1}\n"), ParseError);
  CHECK_THROWS_AS(parse_trace("not json\n"), ParseError);
}
