#include "lctrs/ecterm.hpp"

#include <algorithm>
#include <map>

#include "lctrs/errors.hpp"
#include "lctrs/interpretation.hpp"

namespace lctrs {

std::string tri_name(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: break;
  }
  return "unknown";
}

WellFormedness well_formed(const ECTerm& c) {
  auto fail = [](std::string why) { return WellFormedness{false, std::move(why)}; };
  if (auto bad = c.constraint.violation()) return fail(*bad);
  VarSet term_vars = vars_of(c.term);
  for (const auto& x : c.constraint.free_vars())
    if (!c.logical.count(x)) return fail("FVar ⊄ X: constraint variable " + x.name + " is not logical");
  for (const auto& x : c.logical) {
    if (!term_vars.count(x)) return fail("X ⊄ Var(s): logical variable " + x.name + " does not occur in the term");
    if (!x.sort.is_theory()) return fail("logical variable " + x.name + " has term sort " + x.sort.name);
  }
  for (const auto& x : c.constraint.bound)
    if (term_vars.count(x)) return fail("BVar ∩ Var(s) ≠ ∅: bound variable " + x.name + " occurs in the term");
  return {};
}

SolverVerdict is_sat_ect(const ECTerm& c, Solver& solver) { return solver.check_sat(c.constraint); }

namespace {

bool is_logical_leaf(const Term& t, const VarSet& logical) {
  return t.is_value() || (t.is_var() && logical.count(t.var()));
}

/// Instance of a with its logical variables set from rho (0 when absent).
Term instance_from(const ECTerm& a, const Valuation& rho, const TheoryModel& m) {
  Substitution s;
  for (const auto& x : a.logical) {
    auto it = rho.find(x);
    s.bind(x, m.value_term(x.sort, it == rho.end() ? 0 : it->second));
  }
  return apply_subst(s, a.term);
}

// Matches b's term onto a's term treating a's logical variables as unknown
// values; identifications that depend on those values become equations.
class ConstrainedMatcher {
 public:
  ConstrainedMatcher(const VarSet& a_logical, const VarSet& b_logical) : a_(a_logical), b_(b_logical) {}

  bool run(const Term& p, const Term& s) {
    if (p.is_var()) {
      const Var& y = p.var();
      if (p.sort() != s.sort()) return false;
      auto it = delta_.find(y);
      if (b_.count(y)) {
        if (!is_logical_leaf(s, a_)) return false;
        if (it == delta_.end()) {
          delta_.emplace(y, s);
        } else if (!(it->second == s)) {
          eqs_.push_back(th::eq(it->second, s));
        }
        return true;
      }
      if (it == delta_.end()) {
        delta_.emplace(y, s);
        return true;
      }
      return identify(it->second, s);
    }
    if (p.is_value()) {
      if (s.is_value()) return p == s;
      if (s.is_var() && a_.count(s.var())) {
        eqs_.push_back(th::eq(s, p));
        return true;
      }
      return false;
    }
    if (s.is_var() || !same_symbol(p.head(), s.head())) return false;
    for (std::size_t i = 0; i < p.args().size(); ++i)
      if (!run(p.arg(i), s.arg(i))) return false;
    return true;
  }

  Substitution logical_part() const {
    Substitution out;
    for (const auto& [y, t] : delta_)
      if (b_.count(y)) out.bind(y, t);
    return out;
  }
  const std::vector<Term>& equations() const { return eqs_; }

 private:
  bool identify(const Term& t, const Term& u) {
    if (t == u) return true;
    if (is_logical_leaf(t, a_) && is_logical_leaf(u, a_)) {
      if (t.is_value() && u.is_value()) return false;
      eqs_.push_back(th::eq(t, u));
      return true;
    }
    if (t.is_var() || u.is_var() || !same_symbol(t.head(), u.head())) return false;
    for (std::size_t i = 0; i < t.args().size(); ++i)
      if (!identify(t.arg(i), u.arg(i))) return false;
    return true;
  }

  const VarSet& a_;
  const VarSet& b_;
  std::map<Var, Term> delta_;
  std::vector<Term> eqs_;
};

TriVerdict refute_by_witness(const ECTerm& a, const ECTerm& b, const Valuation& rho, Solver& solver,
                             const std::string& fallback) {
  Term u = instance_from(a, rho, solver.model());
  try {
    if (!contains_instance(b, u, solver)) return TriVerdict::make_no("instance of the first term is not covered", u);
  } catch (const SolverUnknown& e) {
    return TriVerdict::make_unknown(e.what());
  }
  return TriVerdict::make_unknown(fallback);
}

TriVerdict subsumes_exact(const ECTerm& a, const ECTerm& b, const TheoryModel& m) {
  DomainSpec d = DomainSpec::exact(m.modulus());
  EnumerationBackend backend = d.backend();
  for (const auto& rho : logical_models(a, d)) {
    Term u = instance_from(a, rho, m);
    if (!contains_instance(b, u, backend)) return TriVerdict::make_no("instance of the first term is not covered", u);
  }
  return TriVerdict::make_yes();
}

TriVerdict subsumes_symbolic(const ECTerm& a, const ECTerm& b, Solver& solver) {
  SolverVerdict sat = solver.check_sat(a.constraint);
  if (sat.unknown()) return TriVerdict::make_unknown(sat.reason);
  if (sat.unsat()) return TriVerdict::make_yes("the first term is unsatisfiable");
  ConstrainedMatcher matcher(a.logical, b.logical);
  if (!matcher.run(b.term, a.term))
    return refute_by_witness(a, b, sat.witness, solver, "no constrained match of the second term");
  VarSet avoid = vars_of(a.term);
  collect_vars(a.constraint.body, avoid);
  ExistentialConstraint rhs = rename_bound_apart(b.constraint, avoid);
  rhs = apply_subst(matcher.logical_part(), rhs);
  std::vector<Term> parts = matcher.equations();
  parts.push_back(rhs.body);
  rhs.body = th::conj(parts);
  SolverVerdict valid = solver.check_valid_implication(a.constraint, rhs);
  if (valid.sat()) return TriVerdict::make_yes();
  if (valid.unknown()) return TriVerdict::make_unknown(valid.reason);
  return refute_by_witness(a, b, valid.witness, solver, "countervaluation did not yield a separating instance");
}

}  // namespace

TriVerdict subsumes(const ECTerm& a, const ECTerm& b, Solver& solver) {
  if (solver.model().finite()) return subsumes_exact(a, b, solver.model());
  try {
    return subsumes_symbolic(a, b, solver);
  } catch (const SolverUnknown& e) {
    return TriVerdict::make_unknown(e.what());
  }
}

TriVerdict equivalent(const ECTerm& a, const ECTerm& b, Solver& solver) {
  const TheoryModel& m = solver.model();
  if (m.finite()) {
    DomainSpec d = DomainSpec::exact(m.modulus());
    std::set<Term> va = enumerate_value_instances(a, d);
    std::set<Term> vb = enumerate_value_instances(b, d);
    if (va == vb) return TriVerdict::make_yes();
    for (const auto& u : va)
      if (!vb.count(u)) return TriVerdict::make_no("value instance of the first term only", u);
    for (const auto& u : vb)
      if (!va.count(u)) return TriVerdict::make_no("value instance of the second term only", u);
  }
  SolverVerdict sa = solver.check_sat(a.constraint);
  SolverVerdict sb = solver.check_sat(b.constraint);
  if (sa.unsat() && sb.unsat()) return TriVerdict::make_yes("both terms are unsatisfiable");
  if (sa.unsat() && sb.sat()) return TriVerdict::make_no("only the first term is unsatisfiable", instance_from(b, sb.witness, m));
  if (sb.unsat() && sa.sat()) return TriVerdict::make_no("only the second term is unsatisfiable", instance_from(a, sa.witness, m));
  TriVerdict ab = subsumes(a, b, solver);
  if (ab.no()) return ab;
  TriVerdict ba = subsumes(b, a, solver);
  if (ba.no()) return ba;
  if (ab.yes() && ba.yes()) return TriVerdict::make_yes();
  return TriVerdict::make_unknown(ab.unknown() ? ab.reason : ba.reason);
}

}  // namespace lctrs
