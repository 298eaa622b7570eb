#include "lctrs/theory.hpp"

#include "lctrs/errors.hpp"

namespace lctrs {

TheoryModel TheoryModel::int_mod(Element m) {
  if (m < 1 || m > (Element{1} << 30)) throw ConfigError("modulus must lie in 1..2^30");
  TheoryModel t;
  t.mode_ = TheoryMode::IntMod;
  t.modulus_ = m;
  return t;
}

TheoryModel TheoryModel::integers() { return TheoryModel{}; }

std::string TheoryModel::describe() const {
  return finite() ? "intmod " + std::to_string(modulus_) : "int";
}

Element TheoryModel::normalize(const Sort& sort, Element v) const {
  if (sort == bool_sort()) return v ? 1 : 0;
  if (!finite()) return v;
  Element r = v % modulus_;
  return r < 0 ? r + modulus_ : r;
}

std::vector<Element> TheoryModel::carrier(const Sort& sort) const {
  if (sort == bool_sort()) return {0, 1};
  if (sort != int_sort()) throw ConfigError("no carrier for sort " + sort.name);
  if (!finite()) throw ConfigError("the integer carrier is infinite");
  std::vector<Element> out;
  for (Element i = 0; i < modulus_; ++i) out.push_back(i);
  return out;
}

namespace {

void check_overflow(bool overflow) {
  if (overflow) throw Error("integer overflow during evaluation");
}

}  // namespace

Element TheoryModel::apply(Op op, const std::vector<Element>& a) const {
  Element r = 0;
  switch (op) {
    case Op::Add:
      check_overflow(__builtin_add_overflow(a[0], a[1], &r));
      return normalize(int_sort(), r);
    case Op::Sub:
      check_overflow(__builtin_sub_overflow(a[0], a[1], &r));
      return normalize(int_sort(), r);
    case Op::Mul:
      check_overflow(__builtin_mul_overflow(a[0], a[1], &r));
      return normalize(int_sort(), r);
    case Op::Neg:
      check_overflow(__builtin_sub_overflow(Element{0}, a[0], &r));
      return normalize(int_sort(), r);
    case Op::Le: return a[0] <= a[1];
    case Op::Lt: return a[0] < a[1];
    case Op::Ge: return a[0] >= a[1];
    case Op::Gt: return a[0] > a[1];
    case Op::Eq: return a[0] == a[1];
    case Op::And: return a[0] && a[1];
    case Op::Or: return a[0] || a[1];
    case Op::Not: return !a[0];
    case Op::Implies: return !a[0] || a[1];
    case Op::Iff: return (a[0] != 0) == (a[1] != 0);
    case Op::None:
    case Op::Value: break;
  }
  throw NonTheoryTerm("operation has no interpretation");
}

Term TheoryModel::value_term(const Sort& sort, Element v) const { return th::value(sort, normalize(sort, v)); }

Term TheoryModel::normalize_values(const Term& t) const {
  if (t.is_var()) return t;
  if (t.is_value()) {
    Element n = normalize(t.sort(), t.head().value);
    return n == t.head().value ? t : th::value(t.sort(), n);
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(normalize_values(a));
  return Term::apply(t.head_ref(), std::move(args));
}

Element evaluate(const Term& t, const Valuation& rho, const TheoryModel& m) {
  if (t.is_var()) {
    auto it = rho.find(t.var());
    if (it == rho.end()) throw Error("valuation does not assign " + t.var().name);
    return m.normalize(t.sort(), it->second);
  }
  const FunSym& f = t.head();
  if (!f.is_theory()) throw NonTheoryTerm("term symbol " + f.name + " has no theory interpretation");
  if (f.is_value()) return m.normalize(f.result, f.value);
  // Short-circuit keeps evaluation cheap on long conjunctions.
  if (f.op == Op::And) return evaluate(t.arg(0), rho, m) && evaluate(t.arg(1), rho, m);
  std::vector<Element> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(evaluate(a, rho, m));
  return m.apply(f.op, args);
}

bool evaluate_bool(const Term& t, const Valuation& rho, const TheoryModel& m) { return evaluate(t, rho, m) != 0; }

}  // namespace lctrs
