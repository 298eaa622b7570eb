#include "doctest.h"
#include "lctrs/engine.hpp"
#include "lctrs/enum_solver.hpp"
#include "lctrs/errors.hpp"
#include "support.hpp"

using namespace lctrs;
using lctrs::testing::Fixture;

namespace {

const char* kSys =
    "theory intmod 16\n"
    "sig sum : Int -> Int\n"
    "sig f : Int -> Int\n"
    "rule rule1: sum(x) -> 0 [0 >= x] vars {x}\n"
    "rule rule2: sum(x) -> x + sum(x + -1) [x > 0] vars {x}\n"
    "rule rho': f(x') -> x' + y' [y' >= x'] vars {x', y'}\n";

Var iv(const std::string& n) { return Var{n, int_sort()}; }

const char* kShifted = "X {y} term 1 + sum(y) exists [w] phi 1 <= w /\\ w <= 5 /\\ y = w - 1";

std::vector<std::string> ids(const StepSet& s) {
  std::vector<std::string> out;
  for (const auto& st : s.steps) out.push_back(st.redex.rule_id + "@" + position_string(st.redex.position));
  return out;
}

}  // namespace

TEST_CASE("a most general redex at the root") {
  Fixture fx(kSys);
  EnumerationBackend e(fx.p.model);
  ECTerm c = fx.ect("X {x} term sum(x) phi x > 2");
  RedexSearch r = find_redexes(c, fx.rule("rule2"), Mode::MostGeneral, e);
  REQUIRE(r.redexes.size() == 1);
  CHECK(r.redexes[0].position.empty());
  CHECK(*r.redexes[0].matcher.lookup(iv("x#1")) == fx.term("x"));
  CHECK(r.variant.rule.lhs == fx.term("sum(x#1)"));

  ECTerm out = construct_step(c, r.redexes[0], r.variant.rule);
  CHECK(out.logical == VarSet{iv("x")});
  CHECK(out.term == fx.term("x + sum(x + -1)"));
  CHECK(out.constraint.bound.empty());
  CHECK(out.constraint.body == fx.term("x > 2 /\\ x > 0"));
}

TEST_CASE("extra variables become logical in the reduct") {
  Fixture fx(kSys);
  EnumerationBackend e(fx.p.model);
  ECTerm c = fx.ect("X {x} term f(x) phi x > 2");
  RedexSearch r = find_redexes(c, fx.rule("rho'"), Mode::MostGeneral, e);
  REQUIRE(r.redexes.size() == 1);
  ECTerm out = construct_step(c, r.redexes[0], r.variant.rule);
  CHECK(out.term == fx.term("x + y'"));
  CHECK(out.logical == VarSet{iv("x"), iv("y'")});
  CHECK(out.constraint.body == fx.term("x > 2 /\\ y' >= x"));
  CHECK(well_formed(out).ok);
}

TEST_CASE("the gates split on a shifted argument") {
  Fixture fx(kSys);
  EnumerationBackend e(fx.p.model);
  ECTerm c = fx.ect(kShifted);
  CHECK(find_redexes(c, fx.rule("rule1"), Mode::MostGeneral, e).redexes.empty());

  RedexSearch r = find_redexes(c, fx.rule("rule1"), Mode::Partial, e);
  REQUIRE(r.redexes.size() == 1);
  CHECK(r.redexes[0].position == Position{2});
  CHECK(*r.redexes[0].matcher.lookup(iv("x")) == fx.term("y"));

  ECTerm out = construct_step(c, r.redexes[0], r.variant.rule);
  CHECK(out.logical.empty());
  CHECK(out.term == fx.term("1 + 0"));
  CHECK(out.constraint.bound == std::vector<Var>{iv("w"), iv("y")});
  CHECK(out.constraint.body == fx.term("(1 <= w /\\ w <= 5 /\\ y = w - 1) /\\ 0 >= y"));
}

TEST_CASE("all_steps follows rule order then position order") {
  Fixture fx(kSys);
  EnumerationBackend e(fx.p.model);
  LCTRS sum = fx.only({"rule1", "rule2"});
  CHECK(ids(all_steps(fx.ect("X {x} term sum(x) phi 1 <= x /\\ x <= 5"), sum, Mode::MostGeneral, e)) ==
        std::vector<std::string>{"rule2@ε"});
  ECTerm small = fx.ect("X {x} term sum(x) phi 0 <= x /\\ x <= 4");
  CHECK(all_steps(small, sum, Mode::MostGeneral, e).steps.empty());
  CHECK(ids(all_steps(small, sum, Mode::Partial, e)) == std::vector<std::string>{"rule1@ε", "rule2@ε"});
}

TEST_CASE("is_normal_form") {
  Fixture fx(kSys);
  EnumerationBackend e(fx.p.model);
  CHECK(is_normal_form(fx.ect("X {w} term 1 + sum(w) phi 1 <= w /\\ w <= 5"), fx.only({"rule1"}), Mode::Partial, e)
            .yes());
  LCTRS sum = fx.only({"rule1", "rule2"});
  ECTerm pair = fx.ect("X {x} term sum(x) phi 0 <= x /\\ x <= 1");
  CHECK(is_normal_form(pair, sum, Mode::MostGeneral, e).yes());
  CHECK(is_normal_form(pair, sum, Mode::Partial, e).no());
}

TEST_CASE("a calculation step evaluates a logical sum") {
  Fixture fx(kSys);
  EnumerationBackend e(fx.p.model);
  ECTerm c = fx.ect("X {x} term x + 1 phi x = 2");
  StepSet s = all_steps(c, fx.p.system, Mode::MostGeneral, e);
  REQUIRE(s.steps.size() == 1);
  const ECTerm& out = s.steps[0].output;
  REQUIRE(out.term.is_var());
  CHECK(out.logical.count(out.term.var()));
  CHECK(is_normal_form(out, fx.p.system, Mode::MostGeneral, e).yes());
}

TEST_CASE("partial reduction computes the sums") {
  Fixture fx(kSys);
  EnumerationBackend e(fx.p.model);
  LCTRS sys = LCTRS::with_calculation(fx.p.system.user_rules());
  ECTerm c = fx.ect("X {x} term sum(x) phi 1 <= x /\\ x <= 5");
  ReductionResult r = reduce(c, sys, Mode::Partial, e);
  CHECK_FALSE(r.truncated);
  ValueNormalForms v = value_normal_forms(r, e);
  CHECK(v.complete);
  CHECK(v.values == fx.terms({"1", "3", "6", "10", "15"}));
}

TEST_CASE("most general reduction gets stuck") {
  Fixture fx(kSys);
  EnumerationBackend e(fx.p.model);
  ECTerm c = fx.ect("X {x} term sum(x) phi 1 <= x /\\ x <= 5");
  ReductionResult r = reduce(c, fx.p.system, Mode::MostGeneral, e, {10, Strategy::Full, 20000, true});
  REQUIRE(r.frontier.size() == 1);
  const ReductionNode& n = r.nodes[r.frontier[0]];
  CHECK(n.tag == NodeTag::Normal);
  ECTerm golden = fx.ect("X {x, y} term x + sum(y) phi 1 <= x /\\ x <= 5 /\\ y = x - 1");
  CHECK(equivalent(n.term, golden, e).yes());
  CHECK(value_normal_forms(r, e).values.empty());
}

TEST_CASE("fuel and strategy bound the exploration") {
  Fixture fx(kSys);
  EnumerationBackend e(fx.p.model);
  ECTerm c = fx.ect("X {x} term sum(x) phi 1 <= x /\\ x <= 5");
  ReductionResult r = reduce(c, fx.p.system, Mode::Partial, e, {2, Strategy::Full, 20000, true});
  bool exhausted = false;
  for (std::size_t id : r.frontier) exhausted |= r.nodes[id].tag == NodeTag::FuelExhausted;
  CHECK(exhausted);
  CHECK_FALSE(value_normal_forms(r, e).complete);

  ReductionResult first = reduce(c, fx.p.system, Mode::Partial, e, {40, Strategy::First, 20000, true});
  CHECK(first.frontier.size() == 1);
  for (const auto& node : first.nodes) CHECK(node.depth <= first.nodes.size());

  ReductionResult cut = reduce(c, fx.p.system, Mode::Partial, e, {40, Strategy::Full, 5, true});
  CHECK(cut.truncated);
  CHECK(cut.nodes.size() <= 5);
}

TEST_CASE("unsatisfiable inputs are rejected") {
  Fixture fx(kSys);
  EnumerationBackend e(fx.p.model);
  ECTerm c = fx.ect("X {x} term sum(x) phi x < x");
  CHECK_THROWS_AS(reduce(c, fx.p.system, Mode::Partial, e), UnsatisfiableInput);
  CHECK_THROWS_AS(find_redexes(c, fx.rule("rule1"), Mode::Partial, e), UnsatisfiableInput);
}

TEST_CASE("unknown gates are not redexes") {
  Fixture fx(kSys);
  EnumerationBackend e = EnumerationBackend::window(-1, 6);
  ECTerm c = fx.ect("X {x} term sum(x) phi 1 <= x /\\ x <= 5");
  RedexSearch r = find_redexes(c, fx.rule("rule2"), Mode::MostGeneral, e);
  CHECK(r.redexes.empty());
  CHECK(r.unknown.size() == 1);
  CHECK(is_normal_form(c, fx.only({"rule2"}), Mode::MostGeneral, e).unknown());
}
