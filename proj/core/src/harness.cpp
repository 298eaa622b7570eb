#include "lctrs/harness.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "json.hpp"
#include "lctrs/engine.hpp"
#include "lctrs/enum_solver.hpp"
#include "lctrs/errors.hpp"
#include "lctrs/interpretation.hpp"
#include "lctrs/printer.hpp"
#include "lctrs/smt_solver.hpp"

namespace lctrs {

const GenSignature& GenSignature::standard() {
  static const GenSignature sig = [] {
    GenSignature s;
    const Sort& i = int_sort();
    s.f = make_symbol("f", {i}, i);
    s.g = make_symbol("g", {i, i}, i);
    s.h = make_symbol("h", {s.term_sort}, s.term_sort);
    s.k = make_symbol("k", {i, s.term_sort}, s.term_sort);
    s.a = make_symbol("a", {}, s.term_sort);
    s.b = make_symbol("b", {}, s.term_sort);
    return s;
  }();
  return sig;
}

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids{"T-3.2", "T-3.5", "T-3.6", "T-3.7", "T-4.5", "T-4.8",
                                            "T-4.9", "T-4.10", "T-4.11", "T-6.1", "T-6.2", "T-6.3",
                                            "T-6.5", "T-6.6", "T-6.7", "T-6.9"};
  return ids;
}

namespace {

struct Draw {
  Rng& rng;

  int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng); }
  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(range(0, static_cast<int>(xs.size()) - 1))];
  }
};

Element value_bound(const TheoryModel& m) { return m.finite() ? m.modulus() - 1 : 4; }

Term int_value(const TheoryModel& m, Element v) { return m.value_term(int_sort(), v); }

/// c1·v1 (+ c2·v2) op k with coefficients in −2..2 ∖ {0}.
Term linear_atom(Draw& d, const TheoryModel& m, std::vector<Term> vars) {
  int n = std::min<int>(static_cast<int>(vars.size()), d.range(1, 2));
  std::optional<Term> sum;
  for (int i = 0; i < n; ++i) {
    std::size_t j = static_cast<std::size_t>(d.range(0, static_cast<int>(vars.size()) - 1));
    Term v = vars[j];
    vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(j));
    static const Element coeffs[] = {-2, -1, 1, 2};
    Element c = coeffs[d.range(0, 3)];
    Term t = c == 1 ? v : th::mul(int_value(m, c), v);
    sum = sum ? th::add(*sum, t) : t;
  }
  Term k = int_value(m, d.range(0, static_cast<int>(value_bound(m))));
  switch (d.range(0, 3)) {
    case 0: return th::le(*sum, k);
    case 1: return th::lt(*sum, k);
    case 2: return th::eq(*sum, k);
    default: return th::ge(*sum, k);
  }
}

class RuleGen {
 public:
  RuleGen(Draw& d, const GenConfig& cfg) : d_(d), cfg_(cfg), sig_(GenSignature::standard()) {}

  ConstrainedRule make(const std::string& id) {
    lhs_int_.clear();
    lhs_term_.clear();
    counter_ = 0;
    ConstrainedRule r;
    r.id = id;
    Sort s = d_.coin(0.5) ? int_sort() : sig_.term_sort;
    std::size_t depth = std::max<std::size_t>(1, std::min<std::size_t>(cfg_.max_term_depth, 2));
    r.lhs = app(s, depth);
    for (const auto& x : lhs_int_)
      if (d_.coin(0.6)) r.theory_vars.insert(x);
    std::vector<Var> extra;
    r.rhs = rhs(s, 2, extra);
    for (const auto& x : extra) r.theory_vars.insert(x);
    std::vector<Term> pool;
    for (const auto& x : r.theory_vars) pool.push_back(Term::variable(x));
    std::vector<Term> atoms;
    int n = d_.range(0, static_cast<int>(cfg_.max_guard_atoms));
    for (int i = 0; i < n; ++i) {
      if (pool.empty() || d_.coin(0.2)) {
        Var z = fresh("z", int_sort());
        r.theory_vars.insert(z);
        pool.push_back(Term::variable(z));
      }
      atoms.push_back(linear_atom(d_, cfg_.model, pool));
    }
    r.guard = atoms.empty() ? th::truth() : th::conj(atoms);
    return r;
  }

 private:
  Var fresh(const std::string& prefix, const Sort& s) { return {prefix + std::to_string(++counter_), s}; }

  Term pattern(const Sort& s, std::size_t depth) {
    bool is_int = s == int_sort();
    if (depth == 0 || d_.coin(is_int ? 0.6 : 0.45)) {
      Var x = fresh("x", s);
      (is_int ? lhs_int_ : lhs_term_).push_back(x);
      return Term::variable(x);
    }
    return app(s, depth);
  }

  Term app(const Sort& s, std::size_t depth) {
    if (s == int_sort()) {
      if (d_.coin(0.5)) return Term::apply(sig_.f, {pattern(s, depth - 1)});
      Term l = pattern(s, depth - 1);
      return Term::apply(sig_.g, {l, pattern(s, depth - 1)});
    }
    switch (d_.range(0, 3)) {
      case 0:
      case 1: return Term::apply(sig_.h, {pattern(s, depth - 1)});
      case 2: {
        Term l = pattern(int_sort(), depth - 1);
        return Term::apply(sig_.k, {l, pattern(s, depth - 1)});
      }
      default: return Term::apply(d_.coin(0.5) ? sig_.a : sig_.b);
    }
  }

  Term rhs(const Sort& s, std::size_t depth, std::vector<Var>& extra) {
    if (depth == 0 || d_.coin(0.5)) return rhs_leaf(s, extra);
    if (s == int_sort()) {
      switch (d_.range(0, 2)) {
        case 0: return Term::apply(sig_.f, {rhs(s, depth - 1, extra)});
        case 1: {
          Term l = rhs(s, depth - 1, extra);
          return Term::apply(sig_.g, {l, rhs(s, depth - 1, extra)});
        }
        default: {
          Term l = rhs_leaf(s, extra);
          return th::add(l, rhs_leaf(s, extra));
        }
      }
    }
    if (d_.coin(0.5)) return Term::apply(sig_.h, {rhs(s, depth - 1, extra)});
    Term l = rhs(int_sort(), depth - 1, extra);
    return Term::apply(sig_.k, {l, rhs(s, depth - 1, extra)});
  }

  Term rhs_leaf(const Sort& s, std::vector<Var>& extra) {
    if (s == int_sort()) {
      int r = d_.range(0, 9);
      if (r < 5 && !lhs_int_.empty()) return Term::variable(d_.pick(lhs_int_));
      if (r < 8) return int_value(cfg_.model, d_.range(0, static_cast<int>(value_bound(cfg_.model))));
      Var e = fresh("e", s);
      extra.push_back(e);
      return Term::variable(e);
    }
    if (!lhs_term_.empty() && d_.coin(0.6)) return Term::variable(d_.pick(lhs_term_));
    return Term::apply(d_.coin(0.5) ? sig_.a : sig_.b);
  }

  Draw& d_;
  const GenConfig& cfg_;
  const GenSignature& sig_;
  std::vector<Var> lhs_int_;
  std::vector<Var> lhs_term_;
  int counter_ = 0;
};

std::unique_ptr<Solver> generation_solver(const TheoryModel& m) {
  if (m.finite()) return std::make_unique<EnumerationBackend>(m);
  return std::make_unique<EnumerationBackend>(EnumerationBackend::window(-4, 4));
}

class EctGen {
 public:
  EctGen(Draw& d, const GenConfig& cfg, const LCTRS& sys, const std::vector<SymbolRef>& symbols)
      : d_(d), cfg_(cfg), sys_(sys), symbols_(symbols) {}

  std::vector<Sort> root_sorts() const {
    std::vector<Sort> out;
    for (const auto& f : symbols_)
      if (!f->is_theory() && std::find(out.begin(), out.end(), f->result) == out.end()) out.push_back(f->result);
    return out;
  }

  ECTerm make(const Sort& s) {
    logical_.clear();
    nonlogical_ = 0;
    ECTerm c;
    c.term = term(s, cfg_.max_term_depth);
    VarSet tv = vars_of(c.term);
    for (const auto& x : logical_)
      if (tv.count(x)) c.logical.insert(x);
    c.constraint = constraint(c.logical);
    return c;
  }

  ExistentialConstraint constraint(const VarSet& logical) {
    std::vector<Term> pool;
    for (const auto& x : logical) pool.push_back(Term::variable(x));
    std::vector<Term> atoms;
    int n = d_.range(0, 2);
    for (int i = 0; i < n; ++i) {
      std::vector<Term> vars = pool;
      if (vars.empty() || d_.coin(0.25)) vars.push_back(Term::variable("w" + std::to_string(i + 1), int_sort()));
      atoms.push_back(linear_atom(d_, cfg_.model, vars));
    }
    if (atoms.empty()) return ExistentialConstraint(th::truth());
    return close_except(th::conj(atoms), logical);
  }

  Term logical_leaf() {
    if (!logical_.empty() && (logical_.size() >= cfg_.max_logical_vars || d_.coin(0.4)))
      return Term::variable(d_.pick(logical_));
    Var x{"n" + std::to_string(logical_.size() + 1), int_sort()};
    logical_.push_back(x);
    return Term::variable(x);
  }

  Term leaf(const Sort& s) {
    if (s == int_sort()) {
      int r = d_.range(0, 9);
      if (r < 5) return logical_leaf();
      if (r < 7) return int_value(cfg_.model, d_.range(0, static_cast<int>(value_bound(cfg_.model))));
      return Term::variable("m" + std::to_string(++nonlogical_), s);
    }
    std::vector<SymbolRef> consts;
    for (const auto& f : symbols_)
      if (f->arity() == 0 && f->result == s && !f->is_theory()) consts.push_back(f);
    if (!consts.empty() && d_.coin(0.3)) return Term::apply(d_.pick(consts));
    return Term::variable("t" + std::to_string(++nonlogical_), s);
  }

  Term term(const Sort& s, std::size_t depth) {
    if (depth > 0 && d_.coin(0.5))
      if (auto inst = lhs_instance(s, depth)) return *inst;
    std::vector<SymbolRef> heads;
    for (const auto& f : symbols_)
      if (f->result == s && f->arity() > 0 && !f->is_theory()) heads.push_back(f);
    if (depth == 0 || heads.empty() || d_.coin(0.25)) return leaf(s);
    if (s == int_sort() && d_.coin(0.1)) {
      Term l = leaf(s);
      return th::add(l, leaf(s));
    }
    const SymbolRef& f = d_.pick(heads);
    std::vector<Term> args;
    for (const auto& a : f->arg_sorts) args.push_back(term(a, depth - 1));
    return Term::apply(f, std::move(args));
  }

 private:
  std::optional<Term> lhs_instance(const Sort& s, std::size_t depth) {
    std::vector<const ConstrainedRule*> fits;
    for (const auto& r : sys_.rules) {
      if (r.calculation || r.lhs.sort() != s || r.lhs.depth() > depth + 1) continue;
      if (std::any_of(symbols_.begin(), symbols_.end(), [&](const SymbolRef& f) { return same_symbol(*f, r.lhs.head()); }))
        fits.push_back(&r);
    }
    if (fits.empty()) return std::nullopt;
    const ConstrainedRule& r = *d_.pick(fits);
    Substitution sub;
    for (const auto& x : vars_in_order(r.lhs)) {
      if (r.theory_vars.count(x)) {
        if (d_.coin(0.35)) {
          sub.bind(x, int_value(cfg_.model, d_.range(0, static_cast<int>(value_bound(cfg_.model)))));
        } else {
          sub.bind(x, logical_leaf());
        }
      } else if (x.sort == int_sort()) {
        sub.bind(x, leaf(x.sort));
      } else {
        // One extra level only when the pattern leaves room for it.
        bool room = r.lhs.depth() <= depth;
        sub.bind(x, !room || d_.coin(0.5) ? leaf(x.sort) : term(x.sort, 1));
      }
    }
    return apply_subst(sub, r.lhs);
  }

  Draw& d_;
  const GenConfig& cfg_;
  const LCTRS& sys_;
  const std::vector<SymbolRef>& symbols_;
  std::vector<Var> logical_;
  int nonlogical_ = 0;
};

ECTerm close_to(const VarSet& logical, const Term& term, const Term& body) {
  ECTerm c;
  VarSet tv = vars_of(term);
  for (const auto& x : logical)
    if (tv.count(x)) c.logical.insert(x);
  c.term = term;
  c.constraint = close_except(body, c.logical);
  return c;
}

/// A second term related to `a` in one of several ways, for subsumption checks.
ECTerm gen_other(const GenConfig& cfg, Draw& d, const LCTRS& sys, const ECTerm& a) {
  const auto symbols = GenSignature::standard().all();
  EctGen gen(d, cfg, sys, symbols);
  switch (d.range(0, 5)) {
    case 0: {
      ECTerm b = gen.make(a.term.sort());
      return b;
    }
    case 1: {
      ECTerm b = a;
      b.constraint = gen.constraint(a.logical);
      return b;
    }
    case 2: {
      std::vector<Position> vals;
      for (const auto& p : positions(a.term))
        if (subterm_at(a.term, p).is_value() && subterm_at(a.term, p).sort() == int_sort()) vals.push_back(p);
      if (vals.empty()) break;
      const Position& p = d.pick(vals);
      Term old = subterm_at(a.term, p);
      Term v = Term::variable("n9", int_sort());
      VarSet logical = a.logical;
      logical.insert(v.var());
      Term extra = d.coin(0.5) ? th::eq(v, old) : (d.coin(0.5) ? th::ge(v, old) : th::truth());
      ExistentialConstraint base = rename_bound_apart(a.constraint, {v.var()});
      ECTerm b = close_to(logical, replace_at(a.term, p, v), th::conj(base.body, extra));
      // Keep the original binders bound.
      return b;
    }
    case 3: {
      VarSet used = a.constraint.free_vars();
      for (const auto& x : a.logical) {
        if (used.count(x)) continue;
        ECTerm b = a;
        b.logical.erase(x);
        return b;
      }
      break;
    }
    case 4: {
      std::vector<Position> ps;
      for (const auto& p : positions(a.term))
        if (!p.empty()) ps.push_back(p);
      if (ps.empty()) break;
      const Position& p = d.pick(ps);
      Term fresh = Term::variable("t9", subterm_at(a.term, p).sort());
      return close_to(a.logical, replace_at(a.term, p, fresh), a.constraint.body);
    }
    default: break;
  }
  VarSet all = vars_of(a.term);
  collect_vars(a.constraint.body, all);
  Substitution ren = fresh_rename(all, vars_of(a.term));
  ECTerm b;
  for (const auto& x : a.logical) b.logical.insert(apply_renaming(ren, x));
  b.term = apply_subst(ren, a.term);
  b.constraint = apply_subst(ren, a.constraint);
  return b;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool universal(const std::string& theorem) { return theorem != "T-3.2" && theorem != "T-3.5"; }

std::size_t theorem_index(const std::string& theorem) {
  const auto& ids = theorem_ids();
  auto it = std::find(ids.begin(), ids.end(), theorem);
  if (it == ids.end()) throw ConfigError("unknown theorem id " + theorem);
  return static_cast<std::size_t>(it - ids.begin());
}

/// ∃z⃗. πγ with z⃗ = Var(π) ∖ Var(ℓ).
ExistentialConstraint instantiated_guard(const ConstrainedRule& rule, const Substitution& gamma) {
  VarSet lhs_vars = vars_of(rule.lhs);
  ExistentialConstraint g;
  g.body = apply_subst(gamma, rule.guard);
  for (const auto& z : vars_in_order(rule.guard))
    if (!lhs_vars.count(z)) g.bound.push_back(z);
  return g;
}

std::optional<Term> pool_term(const Sort& s, const TheoryModel& m) {
  if (s == int_sort()) return int_value(m, 1);
  if (s == GenSignature::standard().term_sort) return Term::apply(GenSignature::standard().a);
  return std::nullopt;
}

constexpr std::size_t kInstanceCap = 20000;
constexpr std::size_t kReachCap = 200000;

/// Instances of c: logical variables from each model, each non-logical
/// variable either kept or replaced by the pool term of its sort. With
/// `with_pool` false these are the value instances before renaming.
std::vector<Term> instances(const ECTerm& c, const DomainSpec& dom, bool with_pool) {
  std::vector<Var> others;
  for (const auto& x : vars_in_order(c.term))
    if (!c.logical.count(x)) others.push_back(x);
  std::vector<Term> out;
  std::set<Term> seen;
  for (const auto& rho : logical_models(c, dom)) {
    Term base = apply_subst(valuation_subst(rho, dom.model), c.term);
    std::size_t combos = with_pool ? (std::size_t{1} << others.size()) : 1;
    for (std::size_t mask = 0; mask < combos; ++mask) {
      Substitution s;
      bool skip = false;
      for (std::size_t i = 0; i < others.size(); ++i) {
        if (!(mask >> i & 1)) continue;
        auto p = pool_term(others[i].sort, dom.model);
        if (!p) {
          skip = true;
          break;
        }
        s.bind(others[i], *p);
      }
      if (skip) continue;
      Term u = apply_subst(s, base);
      if (seen.insert(u).second) out.push_back(u);
      if (out.size() > kInstanceCap) throw CapExceeded("too many instances");
    }
  }
  return out;
}

/// Terms reachable in at most k steps, by level.
std::vector<std::set<Term>> reach_levels(const std::vector<Term>& start, const GroundSystem& g, std::size_t k) {
  std::vector<std::set<Term>> levels;
  std::set<Term> all(start.begin(), start.end());
  std::set<Term> frontier = all;
  levels.push_back(all);
  for (std::size_t i = 0; i < k; ++i) {
    std::set<Term> next;
    for (const auto& u : frontier)
      for (const auto& v : ground_steps(u, g))
        if (all.insert(v).second) next.insert(v);
    if (all.size() > kReachCap) throw CapExceeded("reachable set too large");
    levels.push_back(all);
    frontier = std::move(next);
  }
  return levels;
}

struct Path {
  ECTerm end;
  std::size_t length;
};

std::vector<Path> reductions(const ECTerm& c, const LCTRS& sys, Mode mode, Solver& solver, std::size_t depth,
                             std::size_t width) {
  std::vector<Path> out;
  std::vector<ECTerm> level{c};
  for (std::size_t len = 1; len <= depth; ++len) {
    std::vector<ECTerm> next;
    for (const auto& t : level) {
      StepSet s = all_steps(t, sys, mode, solver, true);
      for (std::size_t i = 0; i < s.steps.size() && i < width; ++i) {
        out.push_back({s.steps[i].output, len});
        next.push_back(s.steps[i].output);
      }
    }
    level = std::move(next);
  }
  return out;
}

class Checker {
 public:
  explicit Checker(const Bundle& b) : b_(b), c_(b.term), sys_(b.system) {
    if (b.model.finite()) {
      dom_ = DomainSpec::exact(b.model.modulus());
      solver_ = std::make_unique<EnumerationBackend>(b.model);
    } else {
      if (universal(b.theorem)) throw ConfigError(b.theorem + " quantifies over all instances and needs an intmod theory");
      if (!SmtBackend::available()) throw ConfigError("integer mode needs an SMT solver");
      solver_ = std::make_unique<SmtBackend>();
    }
  }

  CaseOutcome run() {
    SolverVerdict sat = solver_->check_sat(c_.constraint);
    if (sat.unknown()) {
      out_.unknowns++;
      return out_;
    }
    if (sat.unsat()) throw UnsatisfiableInput("unsatisfiable case");
    const std::string& t = b_.theorem;
    if (t == "T-3.2") t32();
    else if (t == "T-3.5") t35();
    else if (t == "T-3.6") t36(false);
    else if (t == "T-3.7") t36(true);
    else if (t == "T-4.5") t45();
    else if (t == "T-4.8") t48();
    else if (t == "T-4.9") t49();
    else if (t == "T-4.10") t410();
    else if (t == "T-4.11") t411();
    else if (t == "T-6.1") t61();
    else if (t == "T-6.2") t62();
    else if (t == "T-6.3") t63();
    else if (t == "T-6.5") t65();
    else if (t == "T-6.6") t66();
    else if (t == "T-6.7") t67();
    else if (t == "T-6.9") t69();
    else throw ConfigError("unknown theorem id " + t);
    return out_;
  }

 private:
  void fail(const std::string& why) {
    if (!out_.failed) out_.detail = why;
    out_.failed = true;
  }

  void tally(const TriVerdict& v) {
    if (v.unknown()) out_.unknowns++;
  }

  const GroundSystem& ground() {
    if (!ground_) ground_ = interpret_system(sys_, dom_);
    return *ground_;
  }

  const GroundSystem& ground_of(const ConstrainedRule& r) {
    auto it = per_rule_.find(r.id);
    if (it == per_rule_.end()) it = per_rule_.emplace(r.id, GroundSystem(interpret_rule(r, dom_))).first;
    return it->second;
  }

  const std::vector<Term>& standard() {
    if (!standard_) standard_ = instances(c_, dom_, true);
    return *standard_;
  }

  const std::vector<Term>& values() {
    if (!values_) values_ = instances(c_, dom_, false);
    return *values_;
  }

  static std::string at(const std::string& rule, const Position& p) { return rule + " at " + position_string(p); }

  void t32() {
    for (const auto& rule : sys_.rules) {
      RedexSearch mg = find_redexes(c_, rule, Mode::MostGeneral, *solver_, true);
      out_.unknowns += mg.unknown.size();
      if (mg.redexes.empty()) continue;
      out_.nonvacuous = true;
      RedexSearch pa = find_redexes(c_, rule, Mode::Partial, *solver_, true);
      for (const auto& r : mg.redexes) {
        bool found = std::any_of(pa.redexes.begin(), pa.redexes.end(), [&](const RedexInfo& q) {
          return q.position == r.position && q.matcher == r.matcher;
        });
        if (!found) fail("MG redex of " + at(rule.id, r.position) + " is not a partial redex");
      }
    }
  }

  void t35() {
    StepSet mg = all_steps(c_, sys_, Mode::MostGeneral, *solver_, true);
    StepSet pa = all_steps(c_, sys_, Mode::Partial, *solver_, true);
    out_.unknowns += mg.unknown.size() + pa.unknown.size();
    for (const auto& s : mg.steps) {
      out_.nonvacuous = true;
      bool found = std::any_of(pa.steps.begin(), pa.steps.end(), [&](const StepRecord& q) {
        return q.redex.rule_id == s.redex.rule_id && q.redex.position == s.redex.position &&
               q.redex.matcher == s.redex.matcher && q.output == s.output;
      });
      if (!found) fail("MG step by " + at(s.redex.rule_id, s.redex.position) + " has no identical partial step");
    }
  }

  void t36(bool with_subsumption) {
    StepSet pa = all_steps(c_, sys_, Mode::Partial, *solver_, true);
    out_.unknowns += pa.unknown.size();
    for (const auto& s : pa.steps) {
      out_.nonvacuous = true;
      ECTerm strong{c_.logical, c_.term, prenex_conjoin(c_.constraint, instantiated_guard(s.variant, s.redex.matcher))};
      const ConstrainedRule* rule = sys_.find(s.redex.rule_id);
      RedexSearch mg = find_redexes(strong, *rule, Mode::MostGeneral, *solver_, true);
      out_.unknowns += mg.unknown.size();
      auto it = std::find_if(mg.redexes.begin(), mg.redexes.end(),
                             [&](const RedexInfo& r) { return r.position == s.redex.position; });
      if (it == mg.redexes.end()) {
        fail("strengthened term has no MG redex for " + at(s.redex.rule_id, s.redex.position));
        continue;
      }
      ECTerm d2 = construct_step(strong, *it, mg.variant.rule);
      TriVerdict eq = equivalent(d2, s.output, *solver_);
      tally(eq);
      if (eq.no()) fail("MG reduct " + show(d2) + " is not equivalent to " + show(s.output));
      if (with_subsumption) {
        TriVerdict sub = subsumes(strong, c_, *solver_);
        tally(sub);
        if (sub.no()) fail("strengthened term " + show(strong) + " is not subsumed by the input");
      }
    }
  }

  /// ⟦a⟧ ⊆ ⟦b⟧ by enumerating both constraints directly.
  bool brute_included(const ECTerm& a, const ECTerm& b) {
    std::vector<Term> b_terms;
    for (const auto& rho : brute_models(b)) b_terms.push_back(apply_subst(valuation_subst(rho, b_.model), b.term));
    for (const auto& rho : brute_models(a)) {
      Term u = apply_subst(valuation_subst(rho, b_.model), a.term);
      bool covered = std::any_of(b_terms.begin(), b_terms.end(), [&](const Term& t) { return term_instance_order(t, u); });
      if (!covered) return false;
    }
    return true;
  }

  std::vector<Valuation> brute_models(const ECTerm& c) {
    std::vector<Var> xs(c.logical.begin(), c.logical.end());
    for (const auto& x : c.constraint.bound) xs.push_back(x);
    std::vector<Element> carrier = b_.model.carrier(int_sort());
    std::set<Valuation> out;
    std::vector<std::size_t> idx(xs.size(), 0);
    for (;;) {
      Valuation rho;
      for (std::size_t i = 0; i < xs.size(); ++i)
        rho[xs[i]] = xs[i].sort == bool_sort() ? static_cast<Element>(idx[i] & 1) : carrier[idx[i]];
      if (evaluate_bool(c.constraint.body, rho, b_.model)) {
        Valuation proj;
        for (const auto& x : c.logical) proj[x] = rho[x];
        out.insert(proj);
      }
      std::size_t k = 0;
      while (k < idx.size()) {
        std::size_t size = xs[k].sort == bool_sort() ? 2 : carrier.size();
        if (++idx[k] < size) break;
        idx[k++] = 0;
      }
      if (k == idx.size()) break;
    }
    return {out.begin(), out.end()};
  }

  void t45() {
    const ECTerm& a = c_;
    const ECTerm& b = *b_.other;
    bool ab = brute_included(a, b);
    bool ba = brute_included(b, a);
    TriVerdict sab = subsumes(a, b, *solver_);
    TriVerdict sba = subsumes(b, a, *solver_);
    TriVerdict eq = equivalent(a, b, *solver_);
    tally(sab);
    tally(sba);
    tally(eq);
    out_.nonvacuous = ab || ba;
    auto agree = [&](const TriVerdict& v, bool oracle, const std::string& what) {
      if (v.unknown()) return;
      if (v.yes() != oracle) fail(what + " says " + tri_name(v.value) + ", the oracle says " + (oracle ? "yes" : "no"));
    };
    agree(sab, ab, "subsumes(a, b)");
    agree(sba, ba, "subsumes(b, a)");
    agree(eq, ab && ba, "equivalent(a, b)");
  }

  void t48() {
    StepSet pa = all_steps(c_, sys_, Mode::Partial, *solver_, true);
    out_.unknowns += pa.unknown.size();
    for (const auto& s : pa.steps) {
      out_.nonvacuous = true;
      const GroundSystem& g = ground_of(*sys_.find(s.redex.rule_id));
      const Position& p = s.redex.position;
      std::string where = at(s.redex.rule_id, p);
      bool some = std::any_of(values().begin(), values().end(), [&](const Term& u) { return ground_reducible_at(u, g, p); });
      if (!some) fail("(1) no instance is reducible by " + where);
      std::set<Term> image;
      for (const auto& u : standard())
        for (const auto& v : ground_steps(u, g, p)) image.insert(v);
      for (const auto& v : image)
        if (!contains_instance(s.output, v, *solver_)) fail("(3) reduct " + show(v) + " is outside " + show(s.output));
      for (const auto& w : instances(s.output, dom_, true))
        if (!image.count(w)) fail("(2) " + show(w) + " has no predecessor by " + where);
    }
  }

  void t49() {
    std::vector<Path> paths = reductions(c_, sys_, Mode::Partial, *solver_, 2, 3);
    if (paths.empty()) return;
    out_.nonvacuous = true;
    auto levels = reach_levels(standard(), ground(), 2);
    for (const auto& path : paths) {
      const auto& reach = levels[path.length];
      bool meets = false;
      for (const auto& w : instances(path.end, dom_, true)) {
        if (reach.count(w)) meets = true;
        else fail("(1) " + show(w) + " is not reachable from the input in " + std::to_string(path.length) + " steps");
      }
      if (!meets) fail("(2) no instance of " + show(path.end) + " is reachable");
    }
  }

  void t410() {
    StepSet mg = all_steps(c_, sys_, Mode::MostGeneral, *solver_, true);
    out_.unknowns += mg.unknown.size();
    for (const auto& s : mg.steps) {
      out_.nonvacuous = true;
      const GroundSystem& g = ground_of(*sys_.find(s.redex.rule_id));
      for (const auto& u : standard())
        if (!ground_reducible_at(u, g, s.redex.position))
          fail(show(u) + " is irreducible by " + at(s.redex.rule_id, s.redex.position));
    }
  }

  void t411() {
    std::vector<Path> paths = reductions(c_, sys_, Mode::MostGeneral, *solver_, 2, 3);
    if (paths.empty()) return;
    out_.nonvacuous = true;
    std::map<Term, std::vector<std::set<Term>>> from;
    for (const auto& u : standard()) from.emplace(u, reach_levels({u}, ground(), 2));
    auto levels = reach_levels(standard(), ground(), 2);
    for (const auto& path : paths) {
      for (const auto& [u, lv] : from) {
        const auto& reach = lv[path.length];
        bool hit = std::any_of(reach.begin(), reach.end(), [&](const Term& v) { return contains_instance(path.end, v, *solver_); });
        if (!hit) fail("(1) " + show(u) + " reaches no instance of " + show(path.end));
      }
      for (const auto& w : instances(path.end, dom_, true))
        if (!levels[path.length].count(w)) fail("(2) " + show(w) + " is not reachable from the input");
    }
  }

  void t61() {
    StepSet pa = all_steps(c_, sys_, Mode::Partial, *solver_, true);
    out_.unknowns += pa.unknown.size();
    for (const auto& s : pa.steps) {
      out_.nonvacuous = true;
      const GroundSystem& g = ground_of(*sys_.find(s.redex.rule_id));
      const Position& p = s.redex.position;
      std::set<Term> target = enumerate_value_instances(s.output, dom_);
      std::set<Term> image;
      bool some = false;
      for (const auto& u : values()) {
        for (const auto& v : ground_steps(u, g, p)) {
          some = true;
          image.insert(canonicalize(v));
        }
      }
      if (!some) fail("(1) no value instance is reducible by " + at(s.redex.rule_id, p));
      for (const auto& v : image)
        if (!target.count(v)) fail("(3) reduct " + show(v) + " is not a value instance of " + show(s.output));
      for (const auto& w : target)
        if (!image.count(w)) fail("(2) " + show(w) + " has no value-instance predecessor");
    }
  }

  void t62() {
    for (const auto& rule : sys_.rules) {
      const GroundSystem& g = ground_of(rule);
      std::optional<RedexSearch> found;
      std::map<Position, std::set<Term>> reducts;
      for (const auto& p : positions(c_.term)) {
        for (const auto& u : values()) {
          for (const auto& v : ground_steps(u, g, p)) {
            out_.nonvacuous = true;
            if (!found) {
              found = find_redexes(c_, rule, Mode::Partial, *solver_, true);
              out_.unknowns += found->unknown.size();
              for (const auto& r : found->redexes)
                reducts[r.position] = enumerate_value_instances(construct_step(c_, r, found->variant.rule), dom_);
            }
            auto it = reducts.find(p);
            if (it == reducts.end()) {
              fail("value instance " + show(u) + " reduces by " + at(rule.id, p) + " but no partial step exists");
            } else if (!it->second.count(canonicalize(v))) {
              fail("reduct " + show(v) + " is not covered by the partial step by " + at(rule.id, p));
            }
          }
        }
      }
    }
  }

  void t63() {
    TriVerdict normal = is_normal_form(c_, sys_, Mode::Partial, *solver_);
    tally(normal);
    if (normal.unknown()) return;
    bool all_normal = std::all_of(values().begin(), values().end(), [&](const Term& u) { return ground_normal(u, ground()); });
    out_.nonvacuous = normal.yes();
    if (normal.yes() != all_normal)
      fail(std::string("partial normal form: ") + tri_name(normal.value) + ", value instances ground-normal: " +
           (all_normal ? "yes" : "no"));
  }

  std::set<Position> mg_positions(const ConstrainedRule& rule) {
    RedexSearch mg = find_redexes(c_, rule, Mode::MostGeneral, *solver_, true);
    out_.unknowns += mg.unknown.size();
    std::set<Position> out;
    for (const auto& r : mg.redexes) out.insert(r.position);
    return out;
  }

  void t65() {
    for (const auto& rule : sys_.rules) {
      const GroundSystem& g = ground_of(rule);
      std::set<Position> mg = mg_positions(rule);
      for (const auto& p : positions(c_.term)) {
        bool all = std::all_of(values().begin(), values().end(), [&](const Term& u) { return ground_reducible_at(u, g, p); });
        if (!all) continue;
        out_.nonvacuous = true;
        if (!mg.count(p)) fail("every value instance reduces by " + at(rule.id, p) + " but there is no MG step");
      }
    }
  }

  void t66() {
    for (const auto& rule : sys_.rules) {
      const GroundSystem& g = ground_of(rule);
      std::set<Position> mg = mg_positions(rule);
      for (const auto& p : positions(c_.term)) {
        bool all = std::all_of(standard().begin(), standard().end(), [&](const Term& u) { return ground_reducible_at(u, g, p); });
        if (all || mg.count(p)) out_.nonvacuous = true;
        if (all != (mg.count(p) > 0))
          fail(std::string("MG step by ") + at(rule.id, p) + (mg.count(p) ? " exists" : " is absent") +
               " but instances are " + (all ? "all" : "not all") + " reducible");
      }
    }
  }

  void t67() {
    TriVerdict normal = is_normal_form(c_, sys_, Mode::MostGeneral, *solver_);
    tally(normal);
    if (normal.unknown()) return;
    bool escapes = true;
    for (const auto& rule : sys_.rules) {
      const GroundSystem& g = ground_of(rule);
      for (const auto& p : positions(c_.term)) {
        if (std::all_of(values().begin(), values().end(), [&](const Term& u) { return ground_reducible_at(u, g, p); }))
          escapes = false;
      }
    }
    out_.nonvacuous = normal.yes();
    if (normal.yes() != escapes)
      fail(std::string("MG normal form: ") + tri_name(normal.value) + ", irreducible value instance per rule and position: " +
           (escapes ? "yes" : "no"));
  }

  void t69() {
    TriVerdict inst = instantiation_normal(c_, sys_, dom_);
    tally(inst);
    if (!inst.yes()) return;
    out_.nonvacuous = true;
    TriVerdict normal = is_normal_form(c_, sys_, Mode::Partial, *solver_);
    tally(normal);
    if (normal.no()) fail("instantiation-normal but not partial-normal: " + normal.reason);
  }

  const Bundle& b_;
  const ECTerm& c_;
  const LCTRS& sys_;
  DomainSpec dom_;
  std::unique_ptr<Solver> solver_;
  CaseOutcome out_;
  std::optional<GroundSystem> ground_;
  std::map<std::string, GroundSystem> per_rule_;
  std::optional<std::vector<Term>> standard_;
  std::optional<std::vector<Term>> values_;
};

nlohmann::json bundle_json(const Bundle& b) {
  nlohmann::json j;
  j["theorem"] = b.theorem;
  j["case_seed"] = b.case_seed;
  j["theory"] = b.model.describe();
  j["rules"] = nlohmann::json::array();
  for (const auto& r : b.system.user_rules()) j["rules"].push_back(show(r));
  j["term"] = show(b.term);
  if (b.other) j["other"] = show(*b.other);
  return j;
}

Bundle witness_bundle() {
  Sort t{"T", SortKind::Term};
  auto f = make_symbol("f", {t}, t);
  auto a = make_symbol("a", {}, t);
  auto b = make_symbol("b", {}, t);
  Bundle out;
  out.theorem = "T-6.9";
  out.model = TheoryModel::int_mod(2);
  ConstrainedRule r;
  r.id = "w";
  r.lhs = Term::apply(f, {Term::apply(a)});
  r.rhs = Term::apply(b);
  out.system.rules.push_back(r);
  out.term.term = Term::apply(f, {Term::variable("x", t)});
  return out;
}

}  // namespace

LCTRS gen_system(const GenConfig& cfg, Rng& rng) {
  Draw d{rng};
  RuleGen gen(d, cfg);
  LCTRS sys;
  int n = d.range(1, static_cast<int>(std::max<std::size_t>(1, cfg.max_rules)));
  for (int i = 0; i < n; ++i) {
    for (std::size_t attempt = 0;; ++attempt) {
      if (attempt >= cfg.max_attempts) throw GenerationExhausted("no valid rule after " + std::to_string(attempt) + " attempts");
      ConstrainedRule r = gen.make("r" + std::to_string(i + 1));
      RuleCheck check = validate_rule(r);
      if (check.ok && check.left_linear && check.left_value_free) {
        sys.rules.push_back(std::move(r));
        break;
      }
    }
  }
  for (auto& r : calculation_rules({th::symbol(Op::Add)})) sys.rules.push_back(std::move(r));
  return sys;
}

ECTerm gen_ect(const GenConfig& cfg, Rng& rng, const LCTRS& system, const std::vector<SymbolRef>& symbols) {
  Draw d{rng};
  EctGen gen(d, cfg, system, symbols);
  std::vector<Sort> sorts = gen.root_sorts();
  if (sorts.empty()) throw GenerationExhausted("the signature has no term symbols");
  auto solver = generation_solver(cfg.model);
  for (std::size_t attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    ECTerm c = gen.make(d.pick(sorts));
    if (solver->check_sat(c.constraint).sat()) return c;
  }
  throw GenerationExhausted("no satisfiable term after " + std::to_string(cfg.max_attempts) + " attempts");
}

std::string Bundle::describe() const { return bundle_json(*this).dump(); }

std::string CheckReport::to_json() const {
  nlohmann::json j;
  j["theorem"] = theorem_id;
  j["cases"] = cases_run;
  j["nonvacuous"] = nonvacuous;
  j["unknowns"] = unknowns;
  j["failures"] = nlohmann::json::array();
  for (const auto& [b, why] : failures) {
    nlohmann::json f = bundle_json(b);
    f["detail"] = why;
    j["failures"].push_back(f);
  }
  j["notes"] = notes;
  return j.dump();
}

Bundle make_case(const std::string& theorem, const GenConfig& cfg, std::size_t index) {
  Bundle b;
  b.theorem = theorem;
  b.model = cfg.model;
  b.case_seed = mix(cfg.seed ^ mix(theorem_index(theorem) + 1) ^ mix(index + 0x1000));
  Rng rng(b.case_seed);
  b.system = gen_system(cfg, rng);
  b.term = gen_ect(cfg, rng, b.system, GenSignature::standard().all());
  if (theorem == "T-4.5") {
    Draw d{rng};
    b.other = gen_other(cfg, d, b.system, b.term);
  }
  return b;
}

CaseOutcome run_case(const Bundle& bundle) {
  try {
    return Checker(bundle).run();
  } catch (const UnsatisfiableInput& e) {
    CaseOutcome o;
    o.detail = std::string("skipped: ") + e.what();
    return o;
  } catch (const CapExceeded& e) {
    CaseOutcome o;
    o.unknowns = 1;
    o.detail = std::string("skipped: ") + e.what();
    return o;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    CaseOutcome o;
    o.failed = true;
    o.detail = std::string("error: ") + e.what();
    return o;
  }
}

CheckReport check(const std::string& theorem, const GenConfig& cfg, std::size_t cases) {
  theorem_index(theorem);
  if (!cfg.model.finite() && universal(theorem))
    throw ConfigError(theorem + " quantifies over all instances and needs an intmod theory");
  CheckReport report;
  report.theorem_id = theorem;
  for (std::size_t i = 0; i < cases; ++i) {
    Bundle b;
    try {
      b = make_case(theorem, cfg, i);
    } catch (const GenerationExhausted& e) {
      report.notes.push_back("case " + std::to_string(i) + ": " + e.what());
      continue;
    }
    CaseOutcome o = run_case(b);
    report.cases_run++;
    report.unknowns += o.unknowns;
    if (o.nonvacuous) report.nonvacuous++;
    if (o.failed) {
      Bundle small = minimize(b);
      report.failures.emplace_back(small, run_case(small).detail);
    }
  }
  if (theorem == "T-6.9") {
    WitnessResult w = instantiation_normal_witness();
    if (w.partial_normal && !w.instantiation_normal) {
      report.notes.push_back("f(a) -> b witness: partial-normal, not instantiation-normal, reducible instance " +
                             (w.reducible_instance ? show(*w.reducible_instance) : std::string("?")));
    } else {
      report.failures.emplace_back(witness_bundle(), "f(a) -> b witness does not separate the two notions");
    }
  }
  return report;
}

namespace {

std::vector<Bundle> shrink_term(const Bundle& b, bool other) {
  std::vector<Bundle> out;
  const ECTerm& c = other ? *b.other : b.term;
  auto with = [&](ECTerm next) {
    Bundle n = b;
    (other ? *n.other : n.term) = std::move(next);
    out.push_back(std::move(n));
  };
  std::vector<Term> parts = th::conjuncts(c.constraint.body);
  if (!(c.constraint.body == th::truth())) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      std::vector<Term> rest = parts;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      with(close_to(c.logical, c.term, rest.empty() ? th::truth() : th::conj(rest)));
    }
  }
  VarSet taken = vars_of(c.term);
  collect_vars(c.constraint.body, taken);
  std::set<std::string> names;
  for (const auto& x : taken) names.insert(x.name);
  for (const auto& p : positions(c.term)) {
    const Term& sub = subterm_at(c.term, p);
    if (p.empty() || sub.is_var()) continue;
    Term hole = Term::variable(fresh_name("s", names), sub.sort());
    ECTerm next = close_to(c.logical, replace_at(c.term, p, hole), c.constraint.body);
    if (next.constraint.violation()) continue;
    with(std::move(next));
  }
  return out;
}

std::vector<Bundle> shrink(const Bundle& b) {
  std::vector<Bundle> out;
  for (std::size_t i = 0; i < b.system.rules.size(); ++i) {
    if (b.system.rules[i].calculation) continue;
    Bundle n = b;
    n.system.rules.erase(n.system.rules.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(std::move(n));
  }
  for (std::size_t i = 0; i < b.system.rules.size(); ++i) {
    const ConstrainedRule& r = b.system.rules[i];
    if (r.calculation || r.guard == th::truth()) continue;
    std::vector<Term> parts = th::conjuncts(r.guard);
    for (std::size_t j = 0; j < parts.size(); ++j) {
      std::vector<Term> rest = parts;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
      Bundle n = b;
      n.system.rules[i].guard = rest.empty() ? th::truth() : th::conj(rest);
      out.push_back(std::move(n));
    }
  }
  for (auto& n : shrink_term(b, false)) out.push_back(std::move(n));
  if (b.other)
    for (auto& n : shrink_term(b, true)) out.push_back(std::move(n));
  if (b.model.finite() && b.model.modulus() > 2) {
    Bundle n = b;
    n.model = TheoryModel::int_mod(b.model.modulus() - 1);
    auto norm = [&](const Term& t) { return n.model.normalize_values(t); };
    for (auto& r : n.system.rules) {
      r.lhs = norm(r.lhs);
      r.rhs = norm(r.rhs);
      r.guard = norm(r.guard);
    }
    auto norm_ect = [&](ECTerm& c) {
      c.term = norm(c.term);
      c.constraint.body = norm(c.constraint.body);
    };
    norm_ect(n.term);
    if (n.other) norm_ect(*n.other);
    out.push_back(std::move(n));
  }
  return out;
}

}  // namespace

Bundle minimize(const Bundle& failing, const std::function<bool(const Bundle&)>& still_fails) {
  Bundle current = failing;
  for (bool progress = true; progress;) {
    progress = false;
    for (auto& candidate : shrink(current)) {
      bool fails = false;
      try {
        fails = still_fails(candidate);
      } catch (const std::exception&) {
        fails = false;
      }
      if (fails) {
        current = std::move(candidate);
        progress = true;
        break;
      }
    }
  }
  return current;
}

Bundle minimize(const Bundle& failing) {
  return minimize(failing, [](const Bundle& b) { return run_case(b).failed; });
}

WitnessResult instantiation_normal_witness() {
  Bundle b = witness_bundle();
  EnumerationBackend solver(b.model);
  WitnessResult out;
  out.partial_normal = is_normal_form(b.term, b.system, Mode::Partial, solver).yes();
  TriVerdict inst = instantiation_normal(b.term, b.system, DomainSpec::exact(b.model.modulus()));
  out.instantiation_normal = inst.yes();
  out.reducible_instance = inst.counterexample;
  return out;
}

}  // namespace lctrs
