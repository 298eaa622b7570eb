#include "lctrs/engine.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "lctrs/enum_solver.hpp"
#include "lctrs/errors.hpp"

namespace lctrs {

std::string mode_name(Mode m) { return m == Mode::MostGeneral ? "mg" : "partial"; }

std::string tag_name(NodeTag t) {
  switch (t) {
    case NodeTag::Normal: return "normal";
    case NodeTag::FuelExhausted: return "fuel-exhausted";
    case NodeTag::UnknownGated: return "unknown-gated";
    case NodeTag::Expanded: return "expanded";
    case NodeTag::Duplicate: return "duplicate";
  }
  return "expanded";
}

namespace {

void require_sat(const ECTerm& c, Solver& solver) {
  SolverVerdict v = solver.check_sat(c.constraint);
  if (v.unsat()) throw UnsatisfiableInput("the constraint of the input term is unsatisfiable");
  if (v.unknown()) throw UnsatisfiableInput("satisfiability of the input term is unknown: " + v.reason);
}

VarSet avoid_set(const ECTerm& c) {
  VarSet avoid = vars_of(c.term);
  collect_vars(c.constraint.body, avoid);
  for (const auto& x : c.constraint.bound) avoid.insert(x);
  for (const auto& x : c.logical) avoid.insert(x);
  return avoid;
}

/// ∃z⃗. πγ with z⃗ = Var(π) ∖ Var(ℓ) in first-occurrence order.
ExistentialConstraint instantiated_guard(const ConstrainedRule& rule, const Substitution& gamma) {
  VarSet lhs_vars = vars_of(rule.lhs);
  ExistentialConstraint g;
  g.body = apply_subst(gamma, rule.guard);
  for (const auto& z : vars_in_order(rule.guard))
    if (!lhs_vars.count(z)) g.bound.push_back(z);
  return g;
}

}  // namespace

RedexSearch find_redexes(const ECTerm& c, const ConstrainedRule& rule, Mode mode, Solver& solver, bool assume_sat) {
  if (!assume_sat) require_sat(c, solver);
  RedexSearch out;
  out.variant = fresh_variant(rule, avoid_set(c));
  const ConstrainedRule& v = out.variant.rule;
  VarSet lhs_vars = vars_of(v.lhs);
  for (const auto& p : positions(c.term)) {
    const Term& sub = subterm_at(c.term, p);
    if (sub.is_var() || !same_symbol(sub.head(), v.lhs.head())) continue;
    auto gamma = match_left_linear(v.lhs, sub);
    if (!gamma) continue;
    bool valued = true;
    for (const auto& x : lhs_vars) {
      if (!v.theory_vars.count(x)) continue;
      const Term* b = gamma->lookup(x);
      if (!b || !(b->is_value() || (b->is_var() && c.logical.count(b->var())))) valued = false;
    }
    if (!valued) continue;
    ExistentialConstraint guard = instantiated_guard(v, *gamma);
    RedexInfo r{p, *gamma, rule.id, mode, {}};
    r.gate = mode == Mode::Partial ? solver.check_sat(prenex_conjoin(c.constraint, guard))
                                   : solver.check_valid_implication(c.constraint, guard);
    if (r.gate.sat()) {
      out.redexes.push_back(std::move(r));
    } else if (r.gate.unknown()) {
      out.unknown.push_back(std::move(r));
    }
  }
  return out;
}

ECTerm construct_step(const ECTerm& c, const RedexInfo& redex, const ConstrainedRule& variant) {
  ECTerm out;
  out.term = replace_at(c.term, redex.position, apply_subst(redex.matcher, variant.rhs));
  Term body = th::conj(c.constraint.body, apply_subst(redex.matcher, variant.guard));
  VarSet t_vars = vars_of(out.term);
  out.logical = extra_vars(variant);
  for (const auto& x : c.logical)
    if (t_vars.count(x)) out.logical.insert(x);
  out.constraint.body = body;
  VarSet placed;
  for (const auto& x : c.constraint.bound)
    if (!t_vars.count(x) && placed.insert(x).second) out.constraint.bound.push_back(x);
  for (const auto& x : vars_in_order(body))
    if (!t_vars.count(x) && placed.insert(x).second) out.constraint.bound.push_back(x);
  return out;
}

StepSet all_steps(const ECTerm& c, const LCTRS& system, Mode mode, Solver& solver, bool assume_sat) {
  if (!assume_sat) require_sat(c, solver);
  StepSet out;
  for (const auto& rule : system.rules) {
    RedexSearch found = find_redexes(c, rule, mode, solver, true);
    for (auto& r : found.redexes) {
      ECTerm next = construct_step(c, r, found.variant.rule);
      out.steps.push_back(StepRecord{c, std::move(r), found.variant.rule, std::move(next)});
    }
    for (auto& r : found.unknown) out.unknown.push_back(std::move(r));
  }
  return out;
}

TriVerdict is_normal_form(const ECTerm& c, const LCTRS& system, Mode mode, Solver& solver) {
  StepSet s = all_steps(c, system, mode, solver);
  if (!s.steps.empty())
    return TriVerdict::make_no("step by " + s.steps.front().redex.rule_id + " at " +
                               position_string(s.steps.front().redex.position));
  if (!s.unknown.empty())
    return TriVerdict::make_unknown("gate of " + s.unknown.front().rule_id + " at " +
                                    position_string(s.unknown.front().position) + " is unknown: " +
                                    s.unknown.front().gate.reason);
  return TriVerdict::make_yes();
}

ReductionResult reduce(const ECTerm& c, const LCTRS& system, Mode mode, Solver& solver, const ReduceOptions& opts) {
  require_sat(c, solver);
  ReductionResult out;
  out.nodes.push_back(ReductionNode{c, 0, NodeTag::Expanded, std::nullopt, std::nullopt});
  std::set<std::pair<Term, Term>> seen{{c.term, c.constraint.body}};
  std::deque<std::size_t> queue{0};
  std::vector<std::size_t> finished;
  while (!queue.empty()) {
    std::size_t id = queue.front();
    queue.pop_front();
    if (out.nodes[id].depth >= opts.fuel) {
      out.nodes[id].tag = NodeTag::FuelExhausted;
      finished.push_back(id);
      continue;
    }
    StepSet s = all_steps(out.nodes[id].term, system, mode, solver, true);
    if (s.steps.empty()) {
      out.nodes[id].tag = s.unknown.empty() ? NodeTag::Normal : NodeTag::UnknownGated;
      finished.push_back(id);
      continue;
    }
    out.nodes[id].tag = NodeTag::Expanded;
    if (opts.strategy == Strategy::First) s.steps.resize(1);
    for (auto& step : s.steps) {
      if (out.nodes.size() >= opts.max_nodes) {
        out.truncated = true;
        break;
      }
      ReductionNode child{step.output, out.nodes[id].depth + 1, NodeTag::Expanded, id, std::move(step)};
      bool fresh = seen.insert({child.term.term, child.term.constraint.body}).second;
      if (!fresh) child.tag = NodeTag::Duplicate;
      out.nodes.push_back(std::move(child));
      if (fresh) queue.push_back(out.nodes.size() - 1);
    }
  }
  for (std::size_t id : finished) {
    bool dup = false;
    if (opts.dedup_frontier) {
      for (std::size_t kept : out.frontier) {
        if (out.nodes[kept].tag != out.nodes[id].tag) continue;
        if (equivalent(out.nodes[kept].term, out.nodes[id].term, solver).yes()) {
          dup = true;
          break;
        }
      }
    }
    if (dup)
      out.nodes[id].tag = NodeTag::Duplicate;
    else
      out.frontier.push_back(id);
  }
  return out;
}

ValueNormalForms value_normal_forms(const ReductionResult& r, Solver& solver, std::size_t cap) {
  ValueNormalForms out;
  for (std::size_t id : r.frontier) {
    const ReductionNode& n = r.nodes[id];
    if (n.tag != NodeTag::Normal) {
      if (n.tag != NodeTag::Duplicate) out.complete = false;
      continue;
    }
    const Term& t = n.term.term;
    if (t.is_value()) {
      out.values.insert(t);
      continue;
    }
    if (!t.is_var() || !n.term.logical.count(t.var())) continue;
    const Var& x = t.var();
    if (auto* e = dynamic_cast<EnumerationBackend*>(&solver)) {
      std::size_t found = 0;
      e->for_each_model(n.term.constraint, {x}, [&](const Valuation& rho) {
        out.values.insert(solver.model().value_term(x.sort, rho.at(x)));
        return ++found < cap;
      });
      if (found >= cap || !e->exact()) out.complete = false;
      continue;
    }
    // Enumerate by blocking each value found so far.
    ExistentialConstraint ec = n.term.constraint;
    for (std::size_t k = 0;; ++k) {
      if (k >= cap) {
        out.complete = false;
        break;
      }
      SolverVerdict v = solver.check_sat(ec);
      if (v.unsat()) break;
      if (v.unknown()) {
        out.complete = false;
        break;
      }
      Term val = solver.model().value_term(x.sort, v.witness.at(x));
      out.values.insert(val);
      ec.body = th::conj(ec.body, th::negation(th::eq(t, val)));
    }
  }
  return out;
}

}  // namespace lctrs
