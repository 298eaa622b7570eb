#pragma once

#include <set>
#include <string>
#include <vector>

#include "lctrs/ecterm.hpp"
#include "lctrs/printer.hpp"
#include "lctrs/problem.hpp"
#include "lctrs/rule.hpp"

namespace lctrs::testing {

/// A parsed problem whose signature also serves for ad-hoc terms.
struct Fixture {
  std::string header;
  ProblemFile p;

  explicit Fixture(std::string text) : header(std::move(text)), p(parse_problem(header)) {}

  Term term(const std::string& s) const { return parse_term(p, s); }

  /// Parses the part of an `ect` line after the colon.
  ECTerm ect(const std::string& body) const {
    ProblemFile q = parse_problem(header + "\nect q_: " + body + "\n");
    return *q.find_query("q_");
  }

  const ConstrainedRule& rule(const std::string& id) const { return *p.system.find(id); }

  LCTRS only(const std::vector<std::string>& ids) const {
    LCTRS s;
    for (const auto& id : ids) s.rules.push_back(rule(id));
    return s;
  }

  std::set<Term> terms(const std::vector<std::string>& ss) const {
    std::set<Term> out;
    for (const auto& s : ss) out.insert(term(s));
    return out;
  }
};

inline const char* kSum =
    "theory int\n"
    "sig sum : Int -> Int\n"
    "rule rule1: sum(x) -> 0 [0 >= x] vars {x}\n"
    "rule rule2: sum(x) -> x + sum(x + -1) [x > 0] vars {x}\n";

inline const char* kSumMod16 =
    "theory intmod 16\n"
    "sig sum : Int -> Int\n"
    "rule rule1: sum(x) -> 0 [0 >= x] vars {x}\n"
    "rule rule2: sum(x) -> x + sum(x + -1) [x > 0] vars {x}\n";

/// Mixed signature used by the interpretation examples.
inline const char* kMixed =
    "theory int\n"
    "sig f : Int * T -> T\n"
    "sig g : Int * Int -> Int\n"
    "sig h : T -> T\n"
    "sig u : Int -> T\n"
    "sig a : T\n"
    "sig b : T\n";

inline std::set<std::string> shown(const std::set<Term>& ts) {
  std::set<std::string> out;
  for (const auto& t : ts) out.insert(show(t));
  return out;
}

}  // namespace lctrs::testing
