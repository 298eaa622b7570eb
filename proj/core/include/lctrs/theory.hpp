#pragma once

#include <map>
#include <string>
#include <vector>

#include "lctrs/term.hpp"

namespace lctrs {

enum class TheoryMode { IntMod, Int };

/// The model of the built-in sorts: Bool plus either Z/mZ with wraparound
/// arithmetic (comparisons act on the representatives 0..m-1) or Z.
class TheoryModel {
 public:
  static TheoryModel int_mod(Element m);
  static TheoryModel integers();

  TheoryMode mode() const { return mode_; }
  bool finite() const { return mode_ == TheoryMode::IntMod; }
  Element modulus() const { return modulus_; }
  std::string describe() const;

  /// Canonical representative of an integer literal.
  Element normalize(const Sort& sort, Element v) const;
  /// Every carrier element of a theory sort. Throws ConfigError for Int in
  /// unbounded mode.
  std::vector<Element> carrier(const Sort& sort) const;
  Element apply(Op op, const std::vector<Element>& args) const;
  /// The value constant denoting `v`.
  Term value_term(const Sort& sort, Element v) const;
  /// Replaces each value constant by its canonical representative.
  Term normalize_values(const Term& t) const;

 private:
  TheoryMode mode_ = TheoryMode::Int;
  Element modulus_ = 0;
};

using Valuation = std::map<Var, Element>;

/// Throws NonTheoryTerm on term symbols and Error on unassigned variables.
Element evaluate(const Term& t, const Valuation& rho, const TheoryModel& m);
bool evaluate_bool(const Term& t, const Valuation& rho, const TheoryModel& m);

}  // namespace lctrs
