#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lctrs/substitution.hpp"
#include "lctrs/term.hpp"

namespace lctrs {

/// ∃ bound. body
struct ExistentialConstraint {
  std::vector<Var> bound;
  Term body = th::truth();

  ExistentialConstraint() = default;
  ExistentialConstraint(Term b) : body(std::move(b)) {}  // NOLINT: implicit ∃∅.φ
  ExistentialConstraint(std::vector<Var> xs, Term b) : bound(std::move(xs)), body(std::move(b)) {}

  VarSet free_vars() const;
  VarSet bound_vars() const { return VarSet(bound.begin(), bound.end()); }
  /// Var(body), free and bound.
  VarSet all_vars() const { return vars_of(body); }
  /// Description of the first broken invariant, if any.
  std::optional<std::string> violation() const;

  friend bool operator==(const ExistentialConstraint&, const ExistentialConstraint&) = default;
};

/// Applies σ to the free variables, renaming binders that would capture
/// variables of σ's range.
ExistentialConstraint apply_subst(const Substitution& s, const ExistentialConstraint& ec);
/// Renames binders that clash with `avoid`.
ExistentialConstraint rename_bound_apart(const ExistentialConstraint& ec, const VarSet& avoid);
/// ∃ a.bound, b.bound. a.body ∧ b.body after renaming clashing binders.
ExistentialConstraint prenex_conjoin(const ExistentialConstraint& a, const ExistentialConstraint& b);
/// ∃ (Var(body) ∖ keep). body, binders ordered by first occurrence.
ExistentialConstraint close_except(const Term& body, const VarSet& keep);

}  // namespace lctrs
