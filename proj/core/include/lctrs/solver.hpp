#pragma once

#include <memory>
#include <string>

#include "lctrs/constraint.hpp"
#include "lctrs/errors.hpp"
#include "lctrs/substitution.hpp"
#include "lctrs/theory.hpp"

namespace lctrs {

enum class Status { Sat, Unsat, Unknown };

/// Outcome of a solver query. For validity queries Sat means valid and Unsat
/// carries a countervaluation.
struct SolverVerdict {
  Status status = Status::Unknown;
  Valuation witness;
  std::string reason;

  bool sat() const { return status == Status::Sat; }
  bool unsat() const { return status == Status::Unsat; }
  bool unknown() const { return status == Status::Unknown; }

  static SolverVerdict make_sat(Valuation w = {}) { return {Status::Sat, std::move(w), {}}; }
  static SolverVerdict make_unsat(Valuation w = {}) { return {Status::Unsat, std::move(w), {}}; }
  static SolverVerdict make_unknown(std::string why) { return {Status::Unknown, {}, std::move(why)}; }
};

std::string status_name(Status s);

struct SolverUnknown : Error {
  using Error::Error;
};

class Solver {
 public:
  virtual ~Solver() = default;
  virtual const TheoryModel& model() const = 0;
  /// Exact solvers never answer Unknown.
  virtual bool exact() const = 0;
  virtual std::string name() const = 0;
  /// Sat carries a witness over the free variables.
  virtual SolverVerdict check_sat(const ExistentialConstraint& ec) = 0;
  /// Validity of ∀FV. lhs ⇒ rhs.
  virtual SolverVerdict check_valid_implication(const ExistentialConstraint& lhs,
                                                const ExistentialConstraint& rhs) = 0;
};

/// Substitution mapping each assigned variable to its value constant.
Substitution valuation_subst(const Valuation& rho, const TheoryModel& m);

/// ⊨_{M,ρ} ∃x⃗.φ. Throws SolverUnknown when the backend cannot decide.
bool holds(const ExistentialConstraint& ec, const Valuation& rho, Solver& solver);

/// γ ⊨ ec: Throws NotValued when a free variable is not mapped to a value.
SolverVerdict respects(const Substitution& gamma, const ExistentialConstraint& ec, Solver& solver);

}  // namespace lctrs
