#include "lctrs/solver.hpp"

#include "lctrs/errors.hpp"

namespace lctrs {

std::string status_name(Status s) {
  switch (s) {
    case Status::Sat: return "sat";
    case Status::Unsat: return "unsat";
    case Status::Unknown: break;
  }
  return "unknown";
}

Substitution valuation_subst(const Valuation& rho, const TheoryModel& m) {
  Substitution s;
  for (const auto& [x, v] : rho) s.bind(x, m.value_term(x.sort, v));
  return s;
}

bool holds(const ExistentialConstraint& ec, const Valuation& rho, Solver& solver) {
  for (const auto& x : ec.free_vars())
    if (!rho.count(x)) throw Error("valuation does not assign " + x.name);
  SolverVerdict v = solver.check_sat(apply_subst(valuation_subst(rho, solver.model()), ec));
  if (v.unknown()) throw SolverUnknown(v.reason);
  return v.sat();
}

SolverVerdict respects(const Substitution& gamma, const ExistentialConstraint& ec, Solver& solver) {
  Valuation rho;
  for (const auto& x : ec.free_vars()) {
    const Term* b = gamma.lookup(x);
    if (!b || !b->is_value()) throw NotValued("free constraint variable " + x.name + " is not mapped to a value");
    rho[x] = b->head().value;
  }
  SolverVerdict v = solver.check_sat(apply_subst(valuation_subst(rho, solver.model()), ec));
  if (v.sat()) v.witness = rho;
  return v;
}

}  // namespace lctrs
