#include "lctrs/printer.hpp"

namespace lctrs {

namespace {

constexpr int kAtom = 9;

int level(const Term& t) {
  if (t.is_var() || !t.head().is_theory()) return kAtom;
  switch (t.head().op) {
    case Op::Implies:
    case Op::Iff: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Not: return 4;
    case Op::Le:
    case Op::Lt:
    case Op::Ge:
    case Op::Gt:
    case Op::Eq: return 5;
    case Op::Add:
    case Op::Sub: return 6;
    case Op::Mul: return 7;
    default: return kAtom;
  }
}

const char* infix(Op op) {
  switch (op) {
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Le: return "<=";
    case Op::Lt: return "<";
    case Op::Ge: return ">=";
    case Op::Gt: return ">";
    case Op::Eq: return "=";
    case Op::And: return "/\\";
    case Op::Or: return "\\/";
    case Op::Implies: return "=>";
    case Op::Iff: return "<=>";
    default: return nullptr;
  }
}

std::string wrap(const Term& t, bool parens) { return parens ? "(" + show(t) + ")" : show(t); }

}  // namespace

std::string show(const Term& t) {
  if (t.is_var()) return t.var().name;
  const FunSym& f = t.head();
  if (f.is_value()) return f.name;
  if (f.is_theory()) {
    if (f.op == Op::Neg) return "-(" + show(t.arg(0)) + ")";
    if (f.op == Op::Not) return "not " + wrap(t.arg(0), level(t.arg(0)) < 4);
    if (const char* op = infix(f.op)) {
      int l = level(t);
      bool chain = l == 2 || l == 3 || l == 6 || l == 7;
      int ll = level(t.arg(0));
      int rl = level(t.arg(1));
      return wrap(t.arg(0), ll < l || (ll == l && !chain)) + " " + op + " " + wrap(t.arg(1), rl <= l);
    }
  }
  if (t.args().empty()) return f.name;
  std::string s = f.name + "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) s += ", ";
    s += show(t.arg(i));
  }
  return s + ")";
}

std::string show(const Var& x) { return x.name; }

std::string show(const VarSet& xs) {
  std::string s = "{";
  bool first = true;
  for (const auto& x : xs) {
    if (!first) s += ", ";
    first = false;
    s += x.name;
  }
  return s + "}";
}

std::string show(const ExistentialConstraint& ec) {
  if (ec.bound.empty()) return show(ec.body);
  std::string s = "∃";
  for (std::size_t i = 0; i < ec.bound.size(); ++i) {
    if (i) s += ",";
    s += ec.bound[i].name;
  }
  return s + ". " + show(ec.body);
}

std::string show(const ECTerm& c) {
  std::string s;
  if (!c.logical.empty()) s = "Π" + show(c.logical) + ". ";
  return s + show(c.term) + " [" + show(c.constraint) + "]";
}

std::string show(const ConstrainedRule& r) {
  std::string z;
  bool first = true;
  for (const auto& x : r.theory_vars) {
    if (!first) z += ", ";
    first = false;
    z += x.name;
  }
  return r.id + ": " + show(r.lhs) + " -> " + show(r.rhs) + " [" + show(r.guard) + "] vars {" + z + "}";
}

std::string show(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [x, t] : s.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += x.name + " ↦ " + show(t);
  }
  return out + "}";
}

std::string show(const Valuation& rho) {
  std::string out = "{";
  bool first = true;
  for (const auto& [x, v] : rho) {
    if (!first) out += ", ";
    first = false;
    out += x.name + " ↦ " + (x.sort == bool_sort() ? std::string(v ? "true" : "false") : std::to_string(v));
  }
  return out + "}";
}

}  // namespace lctrs
