#include "lctrs/interpretation.hpp"

#include <algorithm>
#include <functional>

#include "lctrs/errors.hpp"

namespace lctrs {

DomainSpec DomainSpec::exact(Element modulus) {
  DomainSpec d;
  d.model = TheoryModel::int_mod(modulus);
  return d;
}

DomainSpec DomainSpec::integer_window(Element lo, Element hi) {
  if (lo > hi) throw ConfigError("empty integer window");
  DomainSpec d;
  d.model = TheoryModel::integers();
  d.window = std::make_pair(lo, hi);
  return d;
}

EnumerationBackend DomainSpec::backend() const {
  if (window) return EnumerationBackend::window(window->first, window->second);
  return EnumerationBackend(model);
}

GroundSystem::GroundSystem(std::vector<GroundRule> rules) : rules_(std::move(rules)) {
  for (std::size_t i = 0; i < rules_.size(); ++i) index_[{rules_[i].lhs.head().name, rules_[i].lhs.head().value}].push_back(i);
}

std::vector<const GroundRule*> GroundSystem::with_head(const FunSym& f) const {
  std::vector<const GroundRule*> out;
  auto it = index_.find({f.name, f.value});
  if (it == index_.end()) return out;
  for (std::size_t i : it->second)
    if (same_symbol(rules_[i].lhs.head(), f)) out.push_back(&rules_[i]);
  return out;
}

std::set<Sort> GroundSystem::lhs_sorts() const {
  std::set<Sort> out;
  for (const auto& r : rules_) out.insert(r.lhs.sort());
  return out;
}

namespace {

std::vector<Var> logical_in_order(const ECTerm& c) {
  std::vector<Var> out;
  for (const auto& x : vars_in_order(c.term))
    if (c.logical.count(x)) out.push_back(x);
  return out;
}

void check_cap(std::size_t n, const DomainSpec& d) {
  if (n > d.max_instances) throw CapExceeded("more than " + std::to_string(d.max_instances) + " instances");
}

Term instantiate(const Term& t, const Valuation& rho, const TheoryModel& m) {
  return apply_subst(valuation_subst(rho, m), t);
}

}  // namespace

std::vector<Valuation> logical_models(const ECTerm& c, const DomainSpec& d) {
  EnumerationBackend backend = d.backend();
  std::vector<Valuation> out;
  backend.for_each_model(c.constraint, logical_in_order(c), [&](const Valuation& rho) {
    out.push_back(rho);
    check_cap(out.size(), d);
    return true;
  });
  return out;
}

std::set<Term> enumerate_instances(const ECTerm& c, const DomainSpec& d) {
  std::vector<Var> others;
  for (const auto& x : vars_in_order(c.term))
    if (!c.logical.count(x)) others.push_back(x);
  std::vector<std::vector<Term>> choices;
  for (const auto& x : others) {
    std::vector<Term> opts;
    for (const auto& p : d.pool)
      if (p.sort() == x.sort) opts.push_back(p);
    if (opts.empty()) opts.push_back(Term::variable(x));
    choices.push_back(std::move(opts));
  }
  std::set<Term> out;
  for (const auto& rho : logical_models(c, d)) {
    Term base = instantiate(c.term, rho, d.model);
    std::vector<std::size_t> idx(others.size(), 0);
    for (;;) {
      Substitution s;
      for (std::size_t i = 0; i < others.size(); ++i) s.bind(others[i], choices[i][idx[i]]);
      out.insert(apply_subst(s, base));
      check_cap(out.size(), d);
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  return out;
}

bool contains_instance(const ECTerm& c, const Term& u, Solver& solver) {
  auto m = match(c.term, u);
  if (!m) return false;
  for (const auto& x : c.logical) {
    const Term* b = m->lookup(x);
    if (!b || !b->is_value()) return false;
  }
  SolverVerdict v = respects(*m, c.constraint, solver);
  if (v.unknown()) throw SolverUnknown(v.reason);
  return v.sat();
}

Term canonicalize(const Term& t) {
  std::map<std::string, int> counters;
  Substitution s;
  for (const auto& x : vars_in_order(t)) {
    int k = ++counters[x.sort.name];
    s.bind(x, Term::variable("v" + std::to_string(k), x.sort));
  }
  // Renaming in one parallel step keeps clashes with existing v-names harmless.
  return apply_subst(s, t);
}

std::set<Term> enumerate_value_instances(const ECTerm& c, const DomainSpec& d) {
  std::set<Term> out;
  for (const auto& rho : logical_models(c, d)) out.insert(canonicalize(instantiate(c.term, rho, d.model)));
  return out;
}

std::vector<GroundRule> interpret_rule(const ConstrainedRule& rule, const DomainSpec& d) {
  std::vector<Var> zs;
  VarSet keep;
  std::vector<Var> order = vars_in_order(rule.lhs);
  for (const auto& x : vars_in_order(rule.rhs))
    if (std::find(order.begin(), order.end(), x) == order.end()) order.push_back(x);
  for (const auto& x : order)
    if (rule.theory_vars.count(x)) {
      zs.push_back(x);
      keep.insert(x);
    }
  ExistentialConstraint guard = close_except(rule.guard, keep);
  EnumerationBackend backend = d.backend();
  std::vector<GroundRule> out;
  backend.for_each_model(guard, zs, [&](const Valuation& rho) {
    Substitution s = valuation_subst(rho, d.model);
    out.push_back({apply_subst(s, rule.lhs), apply_subst(s, rule.rhs), rule.id});
    check_cap(out.size(), d);
    return true;
  });
  return out;
}

GroundSystem interpret_system(const LCTRS& system, const DomainSpec& d) {
  std::vector<GroundRule> all;
  for (const auto& r : system.rules) {
    auto g = interpret_rule(r, d);
    all.insert(all.end(), g.begin(), g.end());
    check_cap(all.size(), d);
  }
  return GroundSystem(std::move(all));
}

namespace {

template <typename Candidates>
void steps_at(const Term& u, const Position& p, const Candidates& candidates, std::set<Term>& out) {
  const Term& sub = subterm_at(u, p);
  if (sub.is_var()) return;
  for (const GroundRule* r : candidates(sub.head())) {
    if (auto m = match(r->lhs, sub)) out.insert(replace_at(u, p, apply_subst(*m, r->rhs)));
  }
}

std::set<Term> steps(const Term& u, const std::optional<Position>& p,
                     const std::function<std::vector<const GroundRule*>(const FunSym&)>& candidates) {
  std::set<Term> out;
  if (p) {
    if (valid_position(u, *p)) steps_at(u, *p, candidates, out);
    return out;
  }
  for (const auto& q : positions(u)) steps_at(u, q, candidates, out);
  return out;
}

}  // namespace

std::set<Term> ground_steps(const Term& u, const GroundSystem& g, const std::optional<Position>& p) {
  return steps(u, p, [&](const FunSym& f) { return g.with_head(f); });
}

std::set<Term> ground_steps(const Term& u, const std::vector<GroundRule>& g, const std::optional<Position>& p) {
  return steps(u, p, [&](const FunSym& f) {
    std::vector<const GroundRule*> out;
    for (const auto& r : g)
      if (same_symbol(r.lhs.head(), f)) out.push_back(&r);
    return out;
  });
}

bool ground_reducible_at(const Term& u, const GroundSystem& g, const Position& p) {
  if (!valid_position(u, p)) return false;
  const Term& sub = subterm_at(u, p);
  if (sub.is_var()) return false;
  for (const GroundRule* r : g.with_head(sub.head()))
    if (match(r->lhs, sub)) return true;
  return false;
}

bool ground_normal(const Term& u, const GroundSystem& g) {
  for (const auto& p : positions(u))
    if (ground_reducible_at(u, g, p)) return false;
  return true;
}

std::optional<Substitution> unify(const Term& a, const Term& b) {
  std::map<Var, Term> sol;
  std::function<Term(const Term&)> walk = [&](const Term& t) -> Term {
    if (t.is_var()) {
      auto it = sol.find(t.var());
      return it == sol.end() ? t : walk(it->second);
    }
    return t;
  };
  std::function<bool(const Var&, const Term&)> occurs = [&](const Var& x, const Term& t) -> bool {
    Term w = walk(t);
    if (w.is_var()) return w.var() == x;
    return std::any_of(w.args().begin(), w.args().end(), [&](const Term& s) { return occurs(x, s); });
  };
  std::vector<std::pair<Term, Term>> work{{a, b}};
  while (!work.empty()) {
    auto [s, t] = work.back();
    work.pop_back();
    s = walk(s);
    t = walk(t);
    if (s == t) continue;
    if (s.sort() != t.sort()) return std::nullopt;
    if (s.is_var() || t.is_var()) {
      if (!s.is_var()) std::swap(s, t);
      if (occurs(s.var(), t)) return std::nullopt;
      sol.emplace(s.var(), t);
      continue;
    }
    if (!same_symbol(s.head(), t.head())) return std::nullopt;
    for (std::size_t i = 0; i < s.args().size(); ++i) work.emplace_back(s.arg(i), t.arg(i));
  }
  std::function<Term(const Term&)> resolve = [&](const Term& t) -> Term {
    Term w = walk(t);
    if (w.is_var() || w.args().empty()) return w;
    std::vector<Term> args;
    for (const auto& x : w.args()) args.push_back(resolve(x));
    return Term::apply(w.head_ref(), std::move(args));
  };
  Substitution out;
  for (const auto& [x, t] : sol) out.bind(x, resolve(t));
  return out;
}

TriVerdict instantiation_normal(const ECTerm& c, const LCTRS& system, const DomainSpec& d) {
  GroundSystem g = interpret_system(system, d);
  std::set<Sort> lhs_sorts = g.lhs_sorts();
  for (const auto& rho : logical_models(c, d)) {
    Term v = instantiate(c.term, rho, d.model);
    VarSet v_vars = vars_of(v);
    for (const auto& q : positions(v)) {
      const Term& sub = subterm_at(v, q);
      if (sub.is_var()) continue;
      for (const GroundRule* r : g.with_head(sub.head())) {
        Substitution apart = fresh_rename(v_vars, vars_of(r->lhs));
        auto mgu = unify(apply_subst(apart, r->lhs), sub);
        if (!mgu) continue;
        Substitution on_v;
        for (const auto& [x, t] : mgu->bindings())
          if (v_vars.count(x)) on_v.bind(x, t);
        return TriVerdict::make_no("instance reducible at " + position_string(q), apply_subst(on_v, v));
      }
    }
    // A variable can be replaced by any left-hand side of its sort.
    for (const auto& x : vars_in_order(v)) {
      if (!lhs_sorts.count(x.sort)) continue;
      for (const auto& r : g.rules()) {
        if (r.lhs.sort() != x.sort) continue;
        Substitution apart = fresh_rename(v_vars, vars_of(r.lhs));
        Substitution s;
        s.bind(x, apply_subst(apart, r.lhs));
        return TriVerdict::make_no("variable " + x.name + " admits a redex instance", apply_subst(s, v));
      }
    }
  }
  if (!d.is_exact()) return TriVerdict::make_unknown("normality over Z is not decided by a window");
  return TriVerdict::make_yes();
}

bool term_instance_order(const Term& s, const Term& t) { return match(s, t).has_value(); }

}  // namespace lctrs
