#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lctrs/ecterm.hpp"
#include "lctrs/enum_solver.hpp"
#include "lctrs/position.hpp"
#include "lctrs/rule.hpp"

namespace lctrs {

/// Where interpretations are enumerated: Z/mZ exactly, or a window lo..hi
/// of Z that only justifies existential conclusions.
struct DomainSpec {
  TheoryModel model = TheoryModel::int_mod(5);
  std::optional<std::pair<Element, Element>> window;
  /// Terms substituted for non-logical variables of the same sort; a
  /// variable with no pool term of its sort is kept.
  std::vector<Term> pool;
  std::size_t max_instances = 200000;

  static DomainSpec exact(Element modulus);
  static DomainSpec integer_window(Element lo, Element hi);
  bool is_exact() const { return !window.has_value(); }
  EnumerationBackend backend() const;
};

struct GroundRule {
  Term lhs;
  Term rhs;
  std::string rule_id;

  friend auto operator<=>(const GroundRule&, const GroundRule&) = default;
  friend bool operator==(const GroundRule&, const GroundRule&) = default;
};

/// ⟦R⟧ indexed by the head symbol of each left-hand side.
class GroundSystem {
 public:
  GroundSystem() = default;
  explicit GroundSystem(std::vector<GroundRule> rules);
  const std::vector<GroundRule>& rules() const { return rules_; }
  std::vector<const GroundRule*> with_head(const FunSym& f) const;
  std::set<Sort> lhs_sorts() const;

 private:
  std::vector<GroundRule> rules_;
  std::map<std::pair<std::string, Element>, std::vector<std::size_t>> index_;
};

/// ⟦c⟧ over the pool of the domain. Throws CapExceeded.
std::set<Term> enumerate_instances(const ECTerm& c, const DomainSpec& d);
/// u ∈ ⟦c⟧. Throws SolverUnknown when the constraint check is undecided.
bool contains_instance(const ECTerm& c, const Term& u, Solver& solver);
/// Renames variables to v1, v2, … per sort in first-occurrence order.
Term canonicalize(const Term& t);
/// ⟦c⟧ᵥ as canonical representatives. Throws CapExceeded.
std::set<Term> enumerate_value_instances(const ECTerm& c, const DomainSpec& d);
/// Logical-variable assignments that satisfy the constraint.
std::vector<Valuation> logical_models(const ECTerm& c, const DomainSpec& d);
/// ⟦ρ⟧. Throws CapExceeded.
std::vector<GroundRule> interpret_rule(const ConstrainedRule& rule, const DomainSpec& d);
GroundSystem interpret_system(const LCTRS& system, const DomainSpec& d);

/// One-step reducts of u, at p when given.
std::set<Term> ground_steps(const Term& u, const GroundSystem& g, const std::optional<Position>& p = std::nullopt);
std::set<Term> ground_steps(const Term& u, const std::vector<GroundRule>& g,
                            const std::optional<Position>& p = std::nullopt);
bool ground_reducible_at(const Term& u, const GroundSystem& g, const Position& p);
bool ground_normal(const Term& u, const GroundSystem& g);

/// Most general unifier of two terms with disjoint variables.
std::optional<Substitution> unify(const Term& a, const Term& b);

/// Every standard instance of c is ⟦R⟧-normal.
TriVerdict instantiation_normal(const ECTerm& c, const LCTRS& system, const DomainSpec& d);

/// s ≤ t: some θ has sθ = t.
bool term_instance_order(const Term& s, const Term& t);

}  // namespace lctrs
