#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lctrs/solver.hpp"

namespace lctrs {

/// Decides constraints by enumerating carriers. Exact over Z/mZ; over Z it
/// searches the window lo..hi and only reports what the window can justify.
class EnumerationBackend : public Solver {
 public:
  explicit EnumerationBackend(TheoryModel model);
  static EnumerationBackend window(Element lo, Element hi);

  const TheoryModel& model() const override { return model_; }
  bool exact() const override { return !window_.has_value(); }
  std::string name() const override;
  SolverVerdict check_sat(const ExistentialConstraint& ec) override;
  SolverVerdict check_valid_implication(const ExistentialConstraint& lhs,
                                        const ExistentialConstraint& rhs) override;

  /// Calls `visit` once per distinct assignment to `project` that extends to
  /// a model of `ec` (with `fixed` held constant). Stops when visit returns
  /// false. Variables of `project` absent from the body range freely.
  void for_each_model(const ExistentialConstraint& ec, const std::vector<Var>& project,
                      const std::function<bool(const Valuation&)>& visit, const Valuation& fixed = {}) const;

  std::vector<Element> domain(const Sort& sort) const;

 private:
  TheoryModel model_;
  std::optional<std::pair<Element, Element>> window_;
};

}  // namespace lctrs
