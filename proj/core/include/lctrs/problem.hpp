#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lctrs/ecterm.hpp"
#include "lctrs/rule.hpp"
#include "lctrs/theory.hpp"

namespace lctrs {

struct ProblemFile {
  TheoryModel model = TheoryModel::integers();
  std::vector<SymbolRef> signature;
  /// User rules followed by the generated calculation rules.
  LCTRS system;
  std::vector<std::pair<std::string, ECTerm>> queries;

  const ECTerm* find_query(const std::string& id) const;
  SymbolRef find_symbol(const std::string& name) const;
};

/// Throws ParseError(line, col, expected) or ValidationError(id, …).
ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::string& path);
/// Renders a problem in the input syntax; parse_problem(print_problem(p))
/// reproduces p.
std::string print_problem(const ProblemFile& p);

/// Parses one term or constraint against a problem's signature, with
/// variable sorts inferred (Int by default).
Term parse_term(const ProblemFile& p, const std::string& text);

}  // namespace lctrs
