#include "lctrs/substitution.hpp"

#include <cctype>
#include <functional>

#include "lctrs/errors.hpp"

namespace lctrs {

void Substitution::bind(const Var& x, const Term& t) {
  if (t.sort() != x.sort)
    throw SortMismatch("binding " + x.name + ":" + x.sort.name + " to a term of sort " + t.sort().name);
  if (t.is_var() && t.var() == x) {
    map_.erase(x);
    return;
  }
  map_.insert_or_assign(x, t);
}

const Term* Substitution::lookup(const Var& x) const {
  auto it = map_.find(x);
  return it == map_.end() ? nullptr : &it->second;
}

VarSet Substitution::domain() const {
  VarSet out;
  for (const auto& [x, t] : map_) out.insert(x);
  return out;
}

VarSet Substitution::value_domain() const {
  VarSet out;
  for (const auto& [x, t] : map_)
    if (t.is_value()) out.insert(x);
  return out;
}

Term apply_subst(const Substitution& s, const Term& t) {
  if (s.empty()) return t;
  if (t.is_var()) {
    const Term* b = s.lookup(t.var());
    return b ? *b : t;
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(apply_subst(s, a));
    changed = changed || !(args.back() == a);
  }
  return changed ? Term::apply(t.head_ref(), std::move(args)) : t;
}

Var apply_renaming(const Substitution& s, const Var& x) {
  const Term* b = s.lookup(x);
  if (!b) return x;
  if (!b->is_var()) throw Error("substitution is not a renaming on " + x.name);
  return b->var();
}

Substitution compose(const Substitution& a, const Substitution& b) {
  Substitution out;
  for (const auto& [x, t] : a.bindings()) out.bind(x, apply_subst(b, t));
  for (const auto& [x, t] : b.bindings())
    if (!a.binds(x)) out.bind(x, t);
  return out;
}

std::optional<Substitution> match_left_linear(const Term& pattern, const Term& subject) {
  if (!is_linear(pattern)) throw NonLinearPattern("pattern is not linear");
  return match(pattern, subject);
}

std::optional<Substitution> match(const Term& pattern, const Term& subject, Substitution seed) {
  // Track variables bound to themselves, which the substitution cannot store.
  VarSet identity;
  std::function<bool(const Term&, const Term&)> go = [&](const Term& p, const Term& s) -> bool {
    if (p.is_var()) {
      if (p.sort() != s.sort()) return false;
      const Var& x = p.var();
      if (const Term* b = seed.lookup(x)) return *b == s;
      if (identity.count(x)) return s.is_var() && s.var() == x;
      if (s.is_var() && s.var() == x)
        identity.insert(x);
      else
        seed.bind(x, s);
      return true;
    }
    if (s.is_var() || !same_symbol(p.head(), s.head())) return false;
    for (std::size_t i = 0; i < p.args().size(); ++i)
      if (!go(p.arg(i), s.arg(i))) return false;
    return true;
  };
  if (!go(pattern, subject)) return std::nullopt;
  return seed;
}

std::string base_name(const std::string& name) {
  auto hash = name.rfind('#');
  if (hash == std::string::npos || hash + 1 == name.size() || hash == 0) return name;
  for (std::size_t i = hash + 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return name;
  return name.substr(0, hash);
}

std::string fresh_name(const std::string& name, const std::set<std::string>& taken) {
  const std::string base = base_name(name);
  for (std::size_t k = 1;; ++k) {
    std::string candidate = base + "#" + std::to_string(k);
    if (!taken.count(candidate)) return candidate;
  }
}

Substitution fresh_rename(const VarSet& avoid, const VarSet& targets) {
  std::set<std::string> taken;
  for (const auto& v : avoid) taken.insert(v.name);
  for (const auto& v : targets) taken.insert(v.name);
  Substitution out;
  for (const auto& v : targets) {
    std::string n = fresh_name(v.name, taken);
    taken.insert(n);
    out.bind(v, Term::variable(n, v.sort));
  }
  return out;
}

}  // namespace lctrs
