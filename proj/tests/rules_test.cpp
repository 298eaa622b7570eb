#include <algorithm>

#include "doctest.h"
#include "lctrs/errors.hpp"
#include "support.hpp"

using namespace lctrs;
using lctrs::testing::Fixture;

namespace {

const char* kRules =
    "theory int\n"
    "sig sum : Int -> Int\n"
    "sig f : Int -> Int\n"
    "rule rule1: sum(x) -> 0 [0 >= x] vars {x}\n"
    "rule rule2: sum(x) -> x + sum(x + -1) [x > 0] vars {x}\n"
    "rule rho': f(x') -> x' + y' [y' >= x'] vars {x', y'}\n";

Var iv(const std::string& n) { return Var{n, int_sort()}; }

}  // namespace

TEST_CASE("validate_rule") {
  Fixture fx(kRules);
  RuleCheck c = validate_rule(fx.rule("rule1"));
  CHECK(c.ok);
  CHECK(c.left_linear);
  CHECK(c.left_value_free);
  CHECK(validate_rule(fx.rule("rho'")).ok);

  ConstrainedRule bad{"bad", {}, fx.term("f(x)"), fx.term("x + y"), th::truth(), false};
  c = validate_rule(bad);
  CHECK_FALSE(c.ok);
  CHECK_FALSE(c.violation.empty());

  ConstrainedRule unhoused_guard{"g", {}, fx.term("sum(x)"), fx.term("0"), fx.term("0 >= x"), false};
  CHECK_FALSE(validate_rule(unhoused_guard).ok);

  ConstrainedRule value_lhs{"v", {}, fx.term("sum(0)"), fx.term("0"), th::truth(), false};
  c = validate_rule(value_lhs);
  CHECK(c.ok);
  CHECK_FALSE(c.left_value_free);

  ConstrainedRule var_lhs{"l", {}, fx.term("x"), fx.term("0"), th::truth(), false};
  CHECK_FALSE(validate_rule(var_lhs).ok);
}

TEST_CASE("extra_vars") {
  Fixture fx(kRules);
  CHECK(extra_vars(fx.rule("rule2")).empty());
  CHECK(extra_vars(fx.rule("rho'")) == VarSet{iv("y'")});
  auto calc = calculation_rules({th::symbol(Op::Add)});
  REQUIRE(calc.size() == 1);
  CHECK(extra_vars(calc[0]).size() == 1);
}

TEST_CASE("fresh_variant renames clashing variables only") {
  Fixture fx(kRules);
  const ConstrainedRule& r2 = fx.rule("rule2");
  Variant v = fresh_variant(r2, {iv("x")});
  CHECK(v.rule.lhs == fx.term("sum(x#1)"));
  CHECK(v.rule.rhs == fx.term("x#1 + sum(x#1 + -1)"));
  CHECK(v.rule.guard == fx.term("x#1 > 0"));
  CHECK(v.rule.theory_vars == VarSet{iv("x#1")});

  Variant same = fresh_variant(r2, {iv("y")});
  CHECK(same.renaming.empty());
  CHECK(same.rule.lhs == r2.lhs);

  VarSet avoid{iv("x")};
  Variant a = fresh_variant(r2, avoid);
  for (const auto& x : a.rule.all_vars()) avoid.insert(x);
  Variant b = fresh_variant(r2, avoid);
  VarSet va = a.rule.all_vars(), vb = b.rule.all_vars();
  CHECK(std::none_of(va.begin(), va.end(), [&](const Var& x) { return vb.count(x) > 0; }));
}

TEST_CASE("calculation rules") {
  CHECK(calculation_rules({}).empty());
  auto calc = calculation_rules({th::symbol(Op::Add)});
  REQUIRE(calc.size() == 1);
  const ConstrainedRule& r = calc[0];
  CHECK(r.calculation);
  CHECK(r.id.rfind("calc:", 0) == 0);
  REQUIRE(r.lhs.args().size() == 2);
  Term y = r.rhs;
  REQUIRE(y.is_var());
  CHECK(r.guard == th::eq(y, r.lhs));
  CHECK(r.theory_vars == r.all_vars());
  CHECK(validate_rule(r).ok);
}

TEST_CASE("with_calculation appends one rule per theory symbol") {
  Fixture fx(kRules);
  const LCTRS& sys = fx.p.system;
  CHECK(sys.includes_calc);
  CHECK(sys.user_rules().size() == 3);
  CHECK(sys.rules.size() == 3 + th::symbols().size());
  CHECK(sys.validate().empty());
  CHECK(sys.find("rule1"));
  CHECK_FALSE(sys.find("rule9"));
}
