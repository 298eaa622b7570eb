#include "lctrs/position.hpp"

#include <functional>

#include "lctrs/errors.hpp"

namespace lctrs {

std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    out.push_back(cur);
    for (std::size_t i = 0; i < u.args().size(); ++i) {
      cur.push_back(i + 1);
      walk(u.arg(i));
      cur.pop_back();
    }
  };
  walk(t);
  return out;
}

bool valid_position(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (std::size_t i : p) {
    if (i == 0 || i > cur->args().size()) return false;
    cur = &cur->arg(i - 1);
  }
  return true;
}

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (std::size_t i : p) {
    if (i == 0 || i > cur->args().size()) throw InvalidPosition("no subterm at " + position_string(p));
    cur = &cur->arg(i - 1);
  }
  return *cur;
}

namespace {

Term replace_from(const Term& t, const Position& p, std::size_t k, const Term& u) {
  if (k == p.size()) return u;
  std::size_t i = p[k];
  if (i == 0 || i > t.args().size()) throw InvalidPosition("no subterm at " + position_string(p));
  std::vector<Term> args = t.args();
  args[i - 1] = replace_from(args[i - 1], p, k + 1, u);
  return Term::apply(t.head_ref(), std::move(args));
}

}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& u) {
  const Term& old = subterm_at(t, p);
  if (old.sort() != u.sort())
    throw SortMismatch("replacement of sort " + u.sort().name + " at a position of sort " + old.sort().name);
  return replace_from(t, p, 0, u);
}

std::string position_string(const Position& p) {
  if (p.empty()) return "ε";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(p[i]);
  }
  return s;
}

}  // namespace lctrs
