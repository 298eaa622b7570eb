#pragma once

#include <string>
#include <vector>

#include "lctrs/substitution.hpp"
#include "lctrs/term.hpp"

namespace lctrs {

/// Π Z. lhs → rhs [guard]
struct ConstrainedRule {
  std::string id;
  VarSet theory_vars;
  Term lhs;
  Term rhs;
  Term guard = th::truth();
  bool calculation = false;

  /// Var(lhs) ∪ Var(rhs) ∪ Var(guard) ∪ Z.
  VarSet all_vars() const;
};

struct RuleCheck {
  bool ok = true;
  std::string violation;
  bool left_linear = false;
  bool left_value_free = false;
};

RuleCheck validate_rule(const ConstrainedRule& rule);

/// Var(rhs) ∖ Var(lhs).
VarSet extra_vars(const ConstrainedRule& rule);

struct Variant {
  ConstrainedRule rule;
  Substitution renaming;
};

/// Renames the rule variables that occur in `avoid`.
Variant fresh_variant(const ConstrainedRule& rule, const VarSet& avoid);

/// f(x1,…,xn) → y [y = f(x1,…,xn)] for each listed non-value theory symbol.
std::vector<ConstrainedRule> calculation_rules(const std::vector<SymbolRef>& symbols);

struct LCTRS {
  std::vector<ConstrainedRule> rules;
  bool includes_calc = false;

  /// User rules followed by the calculation rules of every theory symbol.
  static LCTRS with_calculation(std::vector<ConstrainedRule> user_rules);
  std::vector<ConstrainedRule> user_rules() const;
  /// "id: violation" for every failing rule.
  std::vector<std::string> validate() const;
  const ConstrainedRule* find(const std::string& id) const;
};

}  // namespace lctrs
