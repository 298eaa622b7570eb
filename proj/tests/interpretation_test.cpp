#include "doctest.h"
#include "lctrs/errors.hpp"
#include "lctrs/interpretation.hpp"
#include "support.hpp"

using namespace lctrs;
using lctrs::testing::Fixture;
using lctrs::testing::shown;

namespace {

const Sort kT{"T", SortKind::Term};

const char* kPair =
    "theory int\n"
    "sig f : Int * T -> T\n"
    "rule rho': f(x, y) -> y [0 >= x] vars {x}\n";

const char* kUnary =
    "theory int\n"
    "sig f : Int -> T\n";

const char* kConst =
    "theory int\n"
    "sig f : T -> T\n"
    "sig a : T\n"
    "sig b : T\n"
    "rule w: f(a) -> b\n";

DomainSpec with_pool(DomainSpec d, std::vector<Term> pool) {
  d.pool = std::move(pool);
  return d;
}

}  // namespace

TEST_CASE("standard instances over a pool") {
  Fixture fx(kPair);
  ECTerm c = fx.ect("X {x} term f(x, z) exists [y] phi x = y * 2");
  DomainSpec d = with_pool(DomainSpec::exact(6), {Term::variable("z", kT)});
  CHECK(enumerate_instances(c, d) == fx.terms({"f(0, z)", "f(2, z)", "f(4, z)"}));

  CHECK(enumerate_instances(fx.ect("X {x} term f(x, z) phi x < x"), d).empty());

  Fixture u(kUnary);
  Fixture k(kConst);
  CHECK(enumerate_instances(k.ect("term f(x)"), with_pool(DomainSpec::exact(2), {Term::variable("x", kT)})) ==
        k.terms({"f(x)"}));
  CHECK(enumerate_instances(k.ect("term f(x)"), with_pool(DomainSpec::exact(2), {k.term("a"), k.term("b")})) ==
        k.terms({"f(a)", "f(b)"}));
}

TEST_CASE("membership in the standard interpretation") {
  Fixture fx(kPair);
  DomainSpec d = DomainSpec::exact(6);
  EnumerationBackend e = d.backend();
  ECTerm c = fx.ect("X {x} term f(x, z) exists [y] phi x = y * 2");
  CHECK(contains_instance(c, fx.term("f(0, f(x, y))"), e));
  CHECK_FALSE(contains_instance(c, fx.term("f(1, f(x, y))"), e));
  CHECK_FALSE(contains_instance(c, fx.term("f(x, z)"), e));

  Fixture s(lctrs::testing::kSumMod16);
  EnumerationBackend e16(s.p.model);
  ECTerm start = s.ect("X {x} term sum(x) phi 1 <= x /\\ x <= 5");
  CHECK_FALSE(contains_instance(start, s.term("sum(0)"), e16));
  CHECK(contains_instance(start, s.term("sum(1)"), e16));
}

TEST_CASE("value instances are canonical") {
  Fixture fx(kPair);
  CHECK(shown(enumerate_value_instances(fx.ect("X {x} term f(x, z) exists [y] phi x = y * 2"),
                                        DomainSpec::exact(6))) ==
        std::set<std::string>{"f(0, v1)", "f(2, v1)", "f(4, v1)"});

  Fixture s(lctrs::testing::kSum);
  CHECK(enumerate_value_instances(s.ect("X {x} term sum(x) phi 0 <= x /\\ x <= 4"),
                                  DomainSpec::integer_window(-10, 10)) ==
        s.terms({"sum(0)", "sum(1)", "sum(2)", "sum(3)", "sum(4)"}));

  Fixture u(kUnary);
  CHECK(enumerate_value_instances(u.ect("X {x} term f(x)"), DomainSpec::exact(2)) == u.terms({"f(0)", "f(1)"}));
  CHECK(shown(enumerate_value_instances(u.ect("term f(x)"), DomainSpec::exact(2))) ==
        std::set<std::string>{"f(v1)"});
}

TEST_CASE("canonicalize renames per sort in order") {
  Fixture fx(kPair);
  CHECK(show(canonicalize(fx.term("f(q, f(p, r))"))) == "f(v1, f(v2, v1))");
  Term t = canonicalize(fx.term("f(q + p, f(p, r))"));
  CHECK(t == canonicalize(t));
  CHECK(show(t) == "f(v1 + v2, f(v2, v1))");
}

TEST_CASE("rule interpretations") {
  Fixture fx(kPair);
  std::vector<GroundRule> g = interpret_rule(fx.rule("rho'"), DomainSpec::integer_window(-3, 3));
  std::set<std::string> got;
  for (const auto& r : g) got.insert(show(r.lhs) + " -> " + show(r.rhs));
  CHECK(got == std::set<std::string>{"f(-3, y) -> y", "f(-2, y) -> y", "f(-1, y) -> y", "f(0, y) -> y"});

  Fixture s(lctrs::testing::kSum);
  g = interpret_rule(s.rule("rule1"), DomainSpec::integer_window(-2, 6));
  std::set<Term> lhs;
  for (const auto& r : g) {
    CHECK(r.rhs == s.term("0"));
    lhs.insert(r.lhs);
  }
  CHECK(lhs == s.terms({"sum(-2)", "sum(-1)", "sum(0)"}));

  ConstrainedRule never = s.rule("rule1");
  never.guard = s.term("x < x");
  CHECK(interpret_rule(never, DomainSpec::integer_window(-2, 6)).empty());
}

TEST_CASE("ground steps") {
  Fixture s(lctrs::testing::kSum);
  DomainSpec d = DomainSpec::integer_window(-2, 6);
  auto r1 = interpret_rule(s.rule("rule1"), d);
  auto r2 = interpret_rule(s.rule("rule2"), d);
  CHECK(ground_steps(s.term("sum(0)"), r1) == s.terms({"0"}));
  CHECK(ground_steps(s.term("sum(1)"), r2) == s.terms({"1 + sum(1 + -1)"}));
  CHECK(ground_steps(s.term("sum(1)"), r1).empty());

  Fixture fx(kPair);
  auto rp = interpret_rule(fx.rule("rho'"), DomainSpec::integer_window(-3, 3));
  CHECK(ground_steps(fx.term("f(1, f(0, z))"), rp, Position{2}) == fx.terms({"f(1, z)"}));
  CHECK(ground_steps(fx.term("f(1, f(0, z))"), rp, Position{}).empty());

  GroundSystem g(r1);
  CHECK(ground_reducible_at(s.term("1 + sum(0)"), g, {2}));
  CHECK_FALSE(ground_normal(s.term("1 + sum(0)"), g));
  CHECK(ground_normal(s.term("1 + sum(3)"), g));
}

TEST_CASE("instantiation normality") {
  Fixture k(kConst);
  TriVerdict v = instantiation_normal(k.ect("term f(x)"), k.only({"w"}), DomainSpec::exact(2));
  REQUIRE(v.no());
  REQUIRE(v.counterexample);
  CHECK(show(*v.counterexample) == "f(a)");
  CHECK(instantiation_normal(k.ect("term b"), k.only({"w"}), DomainSpec::exact(2)).yes());

  Fixture s(lctrs::testing::kSumMod16);
  ECTerm c = s.ect("X {w} term 1 + sum(w) phi 1 <= w /\\ w <= 5");
  CHECK(instantiation_normal(c, s.only({"rule1"}), DomainSpec::exact(16)).yes());
  CHECK(instantiation_normal(c, s.p.system, DomainSpec::exact(16)).no());
  CHECK(instantiation_normal(s.ect("term 0"), s.p.system, DomainSpec::exact(16)).yes());
}

TEST_CASE("logical models respect the constraint") {
  Fixture fx(kPair);
  auto ms = logical_models(fx.ect("X {x} term f(x, z) exists [y] phi x = y * 2"), DomainSpec::exact(6));
  std::set<Element> xs;
  for (const auto& m : ms) xs.insert(m.begin()->second);
  CHECK(xs == std::set<Element>{0, 2, 4});
}

TEST_CASE("enumeration caps are enforced") {
  Fixture fx(kPair);
  DomainSpec d = DomainSpec::exact(6);
  d.max_instances = 2;
  CHECK_THROWS_AS(enumerate_instances(fx.ect("X {x} term f(x, z) exists [y] phi x = y * 2"), d), CapExceeded);
}

TEST_CASE("unification and the instance order") {
  Fixture fx(kPair);
  auto u = unify(fx.term("f(x, z)"), fx.term("f(1, f(y, w))"));
  REQUIRE(u);
  CHECK(apply_subst(*u, fx.term("f(x, z)")) == fx.term("f(1, f(y, w))"));
  CHECK_FALSE(unify(fx.term("f(1, z)"), fx.term("f(2, w)")));

  Fixture un(kUnary);
  CHECK(term_instance_order(un.term("f(x)"), un.term("f(0)")));
  CHECK_FALSE(term_instance_order(un.term("f(0)"), un.term("f(x)")));
}
