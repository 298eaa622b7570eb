#pragma once

#include <optional>
#include <string>

#include "lctrs/constraint.hpp"
#include "lctrs/solver.hpp"
#include "lctrs/term.hpp"

namespace lctrs {

/// Π X. term [∃x⃗. φ]
struct ECTerm {
  VarSet logical;
  Term term;
  ExistentialConstraint constraint;

  friend bool operator==(const ECTerm&, const ECTerm&) = default;
};

struct WellFormedness {
  bool ok = true;
  std::string diagnostic;
};

WellFormedness well_formed(const ECTerm& c);

enum class Tri { Yes, No, Unknown };

std::string tri_name(Tri t);

struct TriVerdict {
  Tri value = Tri::Unknown;
  std::string reason;
  /// For No: a term in one interpretation and not in the other.
  std::optional<Term> counterexample;

  bool yes() const { return value == Tri::Yes; }
  bool no() const { return value == Tri::No; }
  bool unknown() const { return value == Tri::Unknown; }

  static TriVerdict make_yes(std::string why = {}) { return {Tri::Yes, std::move(why), std::nullopt}; }
  static TriVerdict make_no(std::string why, std::optional<Term> cex = std::nullopt) {
    return {Tri::No, std::move(why), std::move(cex)};
  }
  static TriVerdict make_unknown(std::string why) { return {Tri::Unknown, std::move(why), std::nullopt}; }
};

SolverVerdict is_sat_ect(const ECTerm& c, Solver& solver);

/// ⟦a⟧ ⊆ ⟦b⟧. Exact over Z/mZ; over Z a sound matching-based check that may
/// answer Unknown.
TriVerdict subsumes(const ECTerm& a, const ECTerm& b, Solver& solver);
/// a ∼ b, i.e. equal value interpretations.
TriVerdict equivalent(const ECTerm& a, const ECTerm& b, Solver& solver);

}  // namespace lctrs
