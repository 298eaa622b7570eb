#include "lctrs/constraint.hpp"

#include "lctrs/errors.hpp"

namespace lctrs {

VarSet ExistentialConstraint::free_vars() const {
  VarSet out = vars_of(body);
  for (const auto& x : bound) out.erase(x);
  return out;
}

std::optional<std::string> ExistentialConstraint::violation() const {
  if (body.sort() != bool_sort()) return "constraint body is not Boolean";
  if (!is_theory_term(body)) return "constraint body uses a term symbol or term-sorted variable";
  VarSet seen;
  VarSet vs = vars_of(body);
  for (const auto& x : bound) {
    if (!seen.insert(x).second) return "bound variable " + x.name + " is repeated";
    if (!vs.count(x)) return "bound variable " + x.name + " does not occur in the body";
  }
  return std::nullopt;
}

ExistentialConstraint rename_bound_apart(const ExistentialConstraint& ec, const VarSet& avoid) {
  VarSet clash;
  for (const auto& x : ec.bound)
    if (avoid.count(x)) clash.insert(x);
  if (clash.empty()) return ec;
  VarSet all = avoid;
  for (const auto& x : vars_of(ec.body)) all.insert(x);
  Substitution r = fresh_rename(all, clash);
  ExistentialConstraint out;
  for (const auto& x : ec.bound) out.bound.push_back(apply_renaming(r, x));
  out.body = apply_subst(r, ec.body);
  return out;
}

ExistentialConstraint apply_subst(const Substitution& s, const ExistentialConstraint& ec) {
  Substitution free_part;
  VarSet range;
  VarSet bound = ec.bound_vars();
  for (const auto& [x, t] : s.bindings()) {
    if (bound.count(x)) continue;
    free_part.bind(x, t);
    collect_vars(t, range);
  }
  ExistentialConstraint apart = rename_bound_apart(ec, range);
  return ExistentialConstraint{apart.bound, apply_subst(free_part, apart.body)};
}

ExistentialConstraint prenex_conjoin(const ExistentialConstraint& a, const ExistentialConstraint& b) {
  ExistentialConstraint a2 = rename_bound_apart(a, b.free_vars());
  VarSet avoid = vars_of(a2.body);
  ExistentialConstraint b2 = rename_bound_apart(b, avoid);
  ExistentialConstraint out;
  out.bound = a2.bound;
  out.bound.insert(out.bound.end(), b2.bound.begin(), b2.bound.end());
  out.body = th::conj(a2.body, b2.body);
  return out;
}

ExistentialConstraint close_except(const Term& body, const VarSet& keep) {
  ExistentialConstraint out;
  out.body = body;
  for (const auto& x : vars_in_order(body))
    if (!keep.count(x)) out.bound.push_back(x);
  return out;
}

}  // namespace lctrs
