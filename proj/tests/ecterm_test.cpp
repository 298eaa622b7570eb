#include "doctest.h"
#include "lctrs/enum_solver.hpp"
#include "lctrs/smt_solver.hpp"
#include "support.hpp"

using namespace lctrs;
using lctrs::testing::Fixture;

namespace {

std::string sig(const std::string& theory) {
  return "theory " + theory +
         "\n"
         "sig sum : Int -> Int\n"
         "sig sum2 : Int * Int -> Int\n"
         "sig f : Int -> T\n"
         "sig g : Int * Int -> T\n";
}

}  // namespace

TEST_CASE("well_formed") {
  Fixture fx(sig("int"));
  CHECK(well_formed(fx.ect("X {x, y} term sum2(x, y) exists [w] phi x + y >= w")).ok);

  ECTerm free_var = fx.ect("term f(x)");
  free_var.constraint.body = fx.term("x > 0");
  CHECK_FALSE(well_formed(free_var).ok);

  ECTerm unused = fx.ect("X {x, y} term sum2(x, y) phi x + y >= 2");
  unused.constraint.bound.push_back(Var{"z", int_sort()});
  WellFormedness wf = well_formed(unused);
  CHECK_FALSE(wf.ok);
  CHECK_FALSE(wf.diagnostic.empty());

  ECTerm non_theory = fx.ect("term f(x)");
  non_theory.logical.insert(Var{"q", Sort{"T", SortKind::Term}});
  CHECK_FALSE(well_formed(non_theory).ok);
}

TEST_CASE("is_sat_ect") {
  Fixture fx(sig("intmod 16"));
  EnumerationBackend e(fx.p.model);
  CHECK(is_sat_ect(fx.ect("X {x} term sum(x) phi 1 <= x /\\ x <= 5"), e).sat());
  CHECK(is_sat_ect(fx.ect("X {x} term sum(x) phi x < x"), e).unsat());
  CHECK(is_sat_ect(fx.ect("X {y} term 1 + sum(y) exists [w] phi 1 <= w /\\ w <= 5 /\\ y = w - 1"), e).sat());
}

TEST_CASE("subsumes over a finite carrier") {
  Fixture fx(sig("intmod 5"));
  EnumerationBackend e(fx.p.model);
  ECTerm a = fx.ect("X {x, y} term g(x, y) phi x >= y");
  ECTerm b = fx.ect("X {x', y'} term g(x', y') exists [w] phi w >= 0 /\\ x' = y' + w");
  CHECK(subsumes(a, b, e).yes());
  CHECK(subsumes(a, a, e).yes());
  CHECK(subsumes(b, a, e).no());

  TriVerdict v = subsumes(fx.ect("term f(x)"), fx.ect("X {x} term f(x)"), e);
  REQUIRE(v.no());
  REQUIRE(v.counterexample);
  CHECK(v.counterexample->arg(0).is_var());
  CHECK(subsumes(fx.ect("X {x} term f(x)"), fx.ect("term f(x)"), e).yes());
}

TEST_CASE("equivalent over a finite carrier") {
  Fixture fx(sig("intmod 5"));
  EnumerationBackend e(fx.p.model);
  CHECK(equivalent(fx.ect("X {x, y} term g(x, y) phi x = 1 /\\ y > x"), fx.ect("X {y'} term g(1, y') phi y' >= 2"), e)
            .yes());
  CHECK(equivalent(fx.ect("term f(x)"), fx.ect("term f(y)"), e).yes());
  CHECK(equivalent(fx.ect("X {x, y} term g(x, y)"), fx.ect("X {x'} term g(x', y')"), e).no());
  CHECK(equivalent(fx.ect("X {x} term sum(x) phi 1 <= x /\\ x <= 5"),
                   fx.ect("X {x} term sum(x) exists [w] phi 1 <= w /\\ w <= 5 /\\ x = w"), e)
            .yes());
}

TEST_CASE("subsumes and equivalent over the integers") {
  if (!SmtBackend::available()) {
    MESSAGE("z3 not found; skipping");
    return;
  }
  Fixture fx(sig("int"));
  SmtBackend s;
  ECTerm a = fx.ect("X {x, y} term g(x, y) phi x >= y");
  ECTerm b = fx.ect("X {x', y'} term g(x', y') exists [w] phi w >= -1 /\\ x' = y' + w");
  CHECK(subsumes(a, b, s).yes());
  CHECK_FALSE(subsumes(b, a, s).yes());
  CHECK(equivalent(fx.ect("X {x, y} term g(x, y) phi x = 1 /\\ y > x"), fx.ect("X {y'} term g(1, y') phi y' >= 2"), s)
            .yes());
  CHECK(equivalent(fx.ect("term f(x)"), fx.ect("term f(y)"), s).yes());
  CHECK_FALSE(equivalent(fx.ect("X {x, y} term g(x, y)"), fx.ect("X {x'} term g(x', y')"), s).yes());
}
