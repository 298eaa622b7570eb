#include "lctrs/rule.hpp"

#include <algorithm>

namespace lctrs {

VarSet ConstrainedRule::all_vars() const {
  VarSet out = theory_vars;
  collect_vars(lhs, out);
  collect_vars(rhs, out);
  collect_vars(guard, out);
  return out;
}

RuleCheck validate_rule(const ConstrainedRule& rule) {
  RuleCheck r;
  auto fail = [&](std::string why) {
    r.ok = false;
    r.violation = std::move(why);
    return r;
  };
  r.left_linear = is_linear(rule.lhs);
  r.left_value_free = is_value_free(rule.lhs);
  if (rule.lhs.is_var()) return fail("left-hand side is a variable");
  if (rule.lhs.sort() != rule.rhs.sort()) return fail("sides have different sorts");
  if (!is_constraint(rule.guard)) return fail("guard is not a logical constraint");
  for (const auto& z : rule.theory_vars)
    if (!z.sort.is_theory()) return fail("variable " + z.name + " in Z has term sort " + z.sort.name);
  for (const auto& x : vars_of(rule.guard))
    if (!rule.theory_vars.count(x)) return fail("Var(π) ⊄ Z: guard variable " + x.name + " is not in Z");
  for (const auto& x : extra_vars(rule))
    if (!rule.theory_vars.count(x)) return fail("Var(r)∖Var(ℓ) ⊄ Z: extra variable " + x.name + " is not in Z");
  return r;
}

VarSet extra_vars(const ConstrainedRule& rule) {
  VarSet out = vars_of(rule.rhs);
  for (const auto& x : vars_of(rule.lhs)) out.erase(x);
  return out;
}

Variant fresh_variant(const ConstrainedRule& rule, const VarSet& avoid) {
  VarSet vars = rule.all_vars();
  VarSet clash;
  for (const auto& x : vars)
    if (avoid.count(x)) clash.insert(x);
  VarSet blocked = avoid;
  blocked.insert(vars.begin(), vars.end());
  Variant v{rule, fresh_rename(blocked, clash)};
  if (v.renaming.empty()) return v;
  v.rule.theory_vars.clear();
  for (const auto& z : rule.theory_vars) v.rule.theory_vars.insert(apply_renaming(v.renaming, z));
  v.rule.lhs = apply_subst(v.renaming, rule.lhs);
  v.rule.rhs = apply_subst(v.renaming, rule.rhs);
  v.rule.guard = apply_subst(v.renaming, rule.guard);
  return v;
}

std::vector<ConstrainedRule> calculation_rules(const std::vector<SymbolRef>& symbols) {
  std::vector<ConstrainedRule> out;
  for (const auto& f : symbols) {
    if (!f->is_theory() || f->is_value()) continue;
    ConstrainedRule r;
    r.id = "calc:" + f->name;
    r.calculation = true;
    std::vector<Term> xs;
    for (std::size_t i = 0; i < f->arity(); ++i) {
      Var x{"x" + std::to_string(i + 1), f->arg_sorts[i]};
      r.theory_vars.insert(x);
      xs.push_back(Term::variable(x));
    }
    Var y{"y", f->result};
    r.theory_vars.insert(y);
    r.lhs = Term::apply(f, xs);
    r.rhs = Term::variable(y);
    r.guard = th::eq(Term::variable(y), r.lhs);
    out.push_back(std::move(r));
  }
  return out;
}

LCTRS LCTRS::with_calculation(std::vector<ConstrainedRule> user_rules) {
  LCTRS sys;
  sys.rules = std::move(user_rules);
  for (auto& r : calculation_rules(th::symbols())) sys.rules.push_back(std::move(r));
  sys.includes_calc = true;
  return sys;
}

std::vector<ConstrainedRule> LCTRS::user_rules() const {
  std::vector<ConstrainedRule> out;
  std::copy_if(rules.begin(), rules.end(), std::back_inserter(out), [](const auto& r) { return !r.calculation; });
  return out;
}

std::vector<std::string> LCTRS::validate() const {
  std::vector<std::string> out;
  for (const auto& r : rules) {
    RuleCheck c = validate_rule(r);
    if (!c.ok) out.push_back(r.id + ": " + c.violation);
    else if (!c.left_linear) out.push_back(r.id + ": left-hand side is not linear");
  }
  if (includes_calc) {
    for (const auto& f : th::symbols())
      if (!find("calc:" + f->name)) out.push_back("calc:" + f->name + ": calculation rule missing");
  }
  return out;
}

const ConstrainedRule* LCTRS::find(const std::string& id) const {
  for (const auto& r : rules)
    if (r.id == id) return &r;
  return nullptr;
}

}  // namespace lctrs
