#pragma once

#include <map>
#include <optional>
#include <string>

#include "lctrs/term.hpp"

namespace lctrs {

/// Finite sort-preserving substitution. Identity bindings are never stored,
/// so the key set is exactly the domain.
class Substitution {
 public:
  Substitution() = default;

  /// Throws SortMismatch when the binding would change the sort.
  void bind(const Var& x, const Term& t);
  const Term* lookup(const Var& x) const;
  bool binds(const Var& x) const { return map_.count(x) != 0; }
  VarSet domain() const;
  /// Variables mapped to value constants.
  VarSet value_domain() const;
  const std::map<Var, Term>& bindings() const { return map_; }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<Var, Term> map_;
};

Term apply_subst(const Substitution& s, const Term& t);
Var apply_renaming(const Substitution& s, const Var& x);
/// (a then b): apply_subst(compose(a, b), t) == apply_subst(b, apply_subst(a, t)).
Substitution compose(const Substitution& a, const Substitution& b);

/// Matches a linear pattern. The matcher's domain may omit variables bound
/// to themselves, as identity bindings are dropped.
std::optional<Substitution> match_left_linear(const Term& pattern, const Term& subject);

/// General syntactic matching with consistency checks for repeated
/// variables; extends `seed`.
std::optional<Substitution> match(const Term& pattern, const Term& subject, Substitution seed = {});

/// Name with any trailing `#k` suffix removed.
std::string base_name(const std::string& name);
/// Least `base#k`, k >= 1, not used by any variable in `taken` (any sort).
std::string fresh_name(const std::string& name, const std::set<std::string>& taken);

/// Renames each target to a fresh variable outside avoid ∪ targets.
Substitution fresh_rename(const VarSet& avoid, const VarSet& targets);

}  // namespace lctrs
