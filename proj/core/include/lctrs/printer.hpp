#pragma once

#include <string>

#include "lctrs/constraint.hpp"
#include "lctrs/ecterm.hpp"
#include "lctrs/rule.hpp"
#include "lctrs/substitution.hpp"
#include "lctrs/theory.hpp"

namespace lctrs {

std::string show(const Term& t);
std::string show(const Var& x);
std::string show(const VarSet& xs);
/// ∃x⃗. φ, or just φ without binders.
std::string show(const ExistentialConstraint& ec);
/// Π X. s [∃x⃗. φ]; an empty X is omitted.
std::string show(const ECTerm& c);
/// Problem-file syntax: `id: lhs -> rhs [guard] vars {…}`.
std::string show(const ConstrainedRule& r);
std::string show(const Substitution& s);
std::string show(const Valuation& rho);

}  // namespace lctrs
