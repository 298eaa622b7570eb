#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lctrs/ecterm.hpp"
#include "lctrs/rule.hpp"
#include "lctrs/theory.hpp"

namespace lctrs {

struct GenConfig {
  std::uint64_t seed = 42;
  std::size_t max_term_depth = 3;
  std::size_t max_rules = 3;
  std::size_t max_guard_atoms = 2;
  TheoryModel model = TheoryModel::int_mod(5);
  /// Upper bound on distinct logical variables per generated term.
  std::size_t max_logical_vars = 3;
  std::size_t max_attempts = 200;
};

/// The fixed signature used by the generators:
/// f: Int → Int, g: Int × Int → Int, h: T → T, k: Int × T → T, a, b: T.
struct GenSignature {
  Sort term_sort{"T", SortKind::Term};
  SymbolRef f, g, h, k, a, b;

  static const GenSignature& standard();
  std::vector<SymbolRef> all() const { return {f, g, h, k, a, b}; }
};

using Rng = std::mt19937_64;

/// Left-linear, left-value-free rules plus the calculation rules of the
/// theory symbols they use.
LCTRS gen_system(const GenConfig& cfg, Rng& rng);
/// A satisfiable term over `symbols`. Throws GenerationExhausted.
ECTerm gen_ect(const GenConfig& cfg, Rng& rng, const LCTRS& system, const std::vector<SymbolRef>& symbols);

struct Bundle {
  std::string theorem;
  std::uint64_t case_seed = 0;
  TheoryModel model = TheoryModel::int_mod(5);
  LCTRS system;
  ECTerm term;
  std::optional<ECTerm> other;

  std::string describe() const;
};

struct CaseOutcome {
  bool failed = false;
  bool nonvacuous = false;
  std::size_t unknowns = 0;
  std::string detail;
};

struct CheckReport {
  std::string theorem_id;
  std::size_t cases_run = 0;
  std::size_t nonvacuous = 0;
  std::size_t unknowns = 0;
  std::vector<std::pair<Bundle, std::string>> failures;
  std::vector<std::string> notes;

  std::string to_json() const;
};

const std::vector<std::string>& theorem_ids();

/// Builds the bundle for case `index` of a check.
Bundle make_case(const std::string& theorem, const GenConfig& cfg, std::size_t index);
/// Re-runs one bundle; deterministic.
CaseOutcome run_case(const Bundle& bundle);
/// Runs `cases` generated cases. Throws ConfigError for universal claims
/// outside exact mode and for unknown theorem ids.
CheckReport check(const std::string& theorem, const GenConfig& cfg, std::size_t cases);

/// Greedy shrinking that keeps `still_fails` true.
Bundle minimize(const Bundle& failing, const std::function<bool(const Bundle&)>& still_fails);
/// Shrinks with run_case as the failure predicate.
Bundle minimize(const Bundle& failing);

/// The f(a) → b witness: Π∅. f(x) [true] is partial-normal but not
/// instantiation-normal.
struct WitnessResult {
  bool partial_normal = false;
  bool instantiation_normal = true;
  std::optional<Term> reducible_instance;
};
WitnessResult instantiation_normal_witness();

}  // namespace lctrs
