#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lctrs/ecterm.hpp"
#include "lctrs/position.hpp"
#include "lctrs/rule.hpp"
#include "lctrs/solver.hpp"

namespace lctrs {

enum class Mode { MostGeneral, Partial };

std::string mode_name(Mode m);

struct RedexInfo {
  Position position;
  Substitution matcher;
  std::string rule_id;
  Mode mode = Mode::Partial;
  SolverVerdict gate;
};

struct RedexSearch {
  Variant variant;
  std::vector<RedexInfo> redexes;
  /// Candidates whose gate came back Unknown; they are not redexes.
  std::vector<RedexInfo> unknown;
};

struct StepRecord {
  ECTerm input;
  RedexInfo redex;
  ConstrainedRule variant;
  ECTerm output;
};

struct StepSet {
  std::vector<StepRecord> steps;
  std::vector<RedexInfo> unknown;
};

/// Redexes of one rule in leftmost-outermost order. Throws UnsatisfiableInput
/// when the constraint of c is unsatisfiable (checked unless `assume_sat`).
RedexSearch find_redexes(const ECTerm& c, const ConstrainedRule& rule, Mode mode, Solver& solver,
                         bool assume_sat = false);

/// Π Y. s[rγ]_p [∃y⃗. φ ∧ πγ].
ECTerm construct_step(const ECTerm& c, const RedexInfo& redex, const ConstrainedRule& variant);

/// Steps for all rules, in rule order then position order.
StepSet all_steps(const ECTerm& c, const LCTRS& system, Mode mode, Solver& solver, bool assume_sat = false);

TriVerdict is_normal_form(const ECTerm& c, const LCTRS& system, Mode mode, Solver& solver);

enum class Strategy { Full, First };
enum class NodeTag { Normal, FuelExhausted, UnknownGated, Expanded, Duplicate };

std::string tag_name(NodeTag t);

struct ReduceOptions {
  std::size_t fuel = 40;
  Strategy strategy = Strategy::Full;
  std::size_t max_nodes = 20000;
  /// Drop frontier nodes equivalent to an earlier one.
  bool dedup_frontier = true;
};

struct ReductionNode {
  ECTerm term;
  std::size_t depth = 0;
  NodeTag tag = NodeTag::Expanded;
  std::optional<std::size_t> parent;
  std::optional<StepRecord> step;  // the step that produced this node
};

struct ReductionResult {
  std::vector<ReductionNode> nodes;
  /// Indices of nodes that were not expanded further and are not duplicates.
  std::vector<std::size_t> frontier;
  bool truncated = false;  // max_nodes reached
};

/// Breadth-first exploration of →* or ⇝*. Throws UnsatisfiableInput.
ReductionResult reduce(const ECTerm& c, const LCTRS& system, Mode mode, Solver& solver, const ReduceOptions& opts = {});

struct ValueNormalForms {
  std::set<Term> values;
  bool complete = true;  // false when some frontier node was undecided
};

/// Values denoted by normal-form frontier nodes whose term is a value or a
/// logical variable.
ValueNormalForms value_normal_forms(const ReductionResult& r, Solver& solver, std::size_t cap = 1000);

}  // namespace lctrs
