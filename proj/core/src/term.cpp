#include "lctrs/term.hpp"

#include <functional>
#include <map>
#include <mutex>

#include "lctrs/errors.hpp"

namespace lctrs {

const Sort& bool_sort() {
  static const Sort s{"Bool", SortKind::Theory};
  return s;
}

const Sort& int_sort() {
  static const Sort s{"Int", SortKind::Theory};
  return s;
}

bool same_symbol(const FunSym& a, const FunSym& b) {
  if (&a == &b) return true;
  return a.op == b.op && a.kind == b.kind && a.name == b.name && a.result == b.result &&
         a.arg_sorts == b.arg_sorts && (a.op != Op::Value || a.value == b.value);
}

SymbolRef make_symbol(std::string name, std::vector<Sort> args, Sort result, SymbolKind kind) {
  if (kind == SymbolKind::Theory) {
    for (const auto& s : args)
      if (!s.is_theory()) throw SortMismatch("theory symbol " + name + " takes term sort " + s.name);
    if (!result.is_theory()) throw SortMismatch("theory symbol " + name + " returns term sort " + result.name);
  }
  auto f = std::make_shared<FunSym>();
  f->name = std::move(name);
  f->arg_sorts = std::move(args);
  f->result = std::move(result);
  f->kind = kind;
  return f;
}

struct Term::Node {
  bool is_var = false;
  Var var;
  SymbolRef head;
  std::vector<Term> args;
  std::size_t hash = 0;
  std::size_t size = 1;
  std::size_t depth = 1;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t symbol_hash(const FunSym& f) {
  std::size_t h = std::hash<std::string>{}(f.name);
  h = mix(h, static_cast<std::size_t>(f.op));
  if (f.op == Op::Value) h = mix(h, std::hash<Element>{}(f.value));
  return mix(h, std::hash<std::string>{}(f.result.name));
}

}  // namespace

Term::Term() : Term(th::bool_val(true)) {}

Term Term::variable(Var v) {
  auto n = std::make_shared<Node>();
  n->is_var = true;
  n->hash = mix(std::hash<std::string>{}(v.name), std::hash<std::string>{}(v.sort.name));
  n->var = std::move(v);
  return Term(std::move(n));
}

Term Term::variable(std::string name, Sort sort) { return variable(Var{std::move(name), std::move(sort)}); }

Term Term::apply(SymbolRef head, std::vector<Term> args) {
  if (!head) throw Error("null function symbol");
  if (args.size() != head->arity())
    throw SortMismatch(head->name + " expects " + std::to_string(head->arity()) + " arguments, got " +
                       std::to_string(args.size()));
  for (std::size_t i = 0; i < args.size(); ++i)
    if (args[i].sort() != head->arg_sorts[i])
      throw SortMismatch(head->name + " argument " + std::to_string(i + 1) + " has sort " + args[i].sort().name +
                         ", expected " + head->arg_sorts[i].name);
  auto n = std::make_shared<Node>();
  n->hash = symbol_hash(*head);
  std::size_t deepest = 0;
  for (const auto& a : args) {
    n->hash = mix(n->hash, a.hash());
    n->size += a.size();
    deepest = std::max(deepest, a.depth());
  }
  n->depth = deepest + 1;
  n->head = std::move(head);
  n->args = std::move(args);
  return Term(std::move(n));
}

bool Term::is_var() const { return node_->is_var; }
bool Term::is_value() const { return !node_->is_var && node_->head->is_value(); }

const Var& Term::var() const {
  if (!node_->is_var) throw Error("term is not a variable");
  return node_->var;
}

const FunSym& Term::head() const {
  if (node_->is_var) throw Error("variable has no head symbol");
  return *node_->head;
}

const SymbolRef& Term::head_ref() const {
  if (node_->is_var) throw Error("variable has no head symbol");
  return node_->head;
}

const std::vector<Term>& Term::args() const {
  static const std::vector<Term> none;
  return node_->is_var ? none : node_->args;
}

const Sort& Term::sort() const { return node_->is_var ? node_->var.sort : node_->head->result; }
std::size_t Term::hash() const { return node_->hash; }
std::size_t Term::size() const { return node_->size; }
std::size_t Term::depth() const { return node_->depth; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->is_var != b.node_->is_var) return false;
  if (a.node_->is_var) return a.node_->var == b.node_->var;
  if (!same_symbol(*a.node_->head, *b.node_->head)) return false;
  return a.node_->args == b.node_->args;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.is_var() != b.is_var()) return a.is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.is_var()) return a.var() <=> b.var();
  const FunSym& f = a.head();
  const FunSym& g = b.head();
  if (f.is_value() != g.is_value()) return f.is_value() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (f.is_value()) {
    if (auto c = f.result <=> g.result; c != 0) return c;
    return f.value <=> g.value;
  }
  if (auto c = f.name <=> g.name; c != 0) return c;
  if (auto c = f.result <=> g.result; c != 0) return c;
  if (auto c = f.arity() <=> g.arity(); c != 0) return c;
  for (std::size_t i = 0; i < f.arity(); ++i)
    if (auto c = a.arg(i) <=> b.arg(i); c != 0) return c;
  return std::strong_ordering::equal;
}

void collect_vars(const Term& t, VarSet& out) {
  if (t.is_var()) {
    out.insert(t.var());
    return;
  }
  for (const auto& a : t.args()) collect_vars(a, out);
}

VarSet vars_of(const Term& t) {
  VarSet out;
  collect_vars(t, out);
  return out;
}

std::vector<Var> vars_in_order(const Term& t) {
  std::vector<Var> out;
  VarSet seen;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    if (u.is_var()) {
      if (seen.insert(u.var()).second) out.push_back(u.var());
      return;
    }
    for (const auto& a : u.args()) walk(a);
  };
  walk(t);
  return out;
}

std::set<Term> vals_of(const Term& t) {
  std::set<Term> out;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    if (u.is_value()) out.insert(u);
    for (const auto& a : u.args()) walk(a);
  };
  walk(t);
  return out;
}

bool is_linear(const Term& t) {
  VarSet seen;
  std::function<bool(const Term&)> walk = [&](const Term& u) {
    if (u.is_var()) return seen.insert(u.var()).second;
    for (const auto& a : u.args())
      if (!walk(a)) return false;
    return true;
  };
  return walk(t);
}

bool is_value_free(const Term& t) { return vals_of(t).empty(); }

bool is_theory_term(const Term& t) {
  if (t.is_var()) return t.sort().is_theory();
  if (!t.head().is_theory()) return false;
  for (const auto& a : t.args())
    if (!is_theory_term(a)) return false;
  return true;
}

bool is_constraint(const Term& t) { return t.sort() == bool_sort() && is_theory_term(t); }

namespace th {

namespace {

SymbolRef theory_symbol(std::string name, std::vector<Sort> args, Sort result, Op op) {
  auto f = std::make_shared<FunSym>();
  f->name = std::move(name);
  f->arg_sorts = std::move(args);
  f->result = std::move(result);
  f->kind = SymbolKind::Theory;
  f->op = op;
  return f;
}

struct Vocabulary {
  std::map<Op, SymbolRef> by_op;
  std::vector<SymbolRef> ordered;

  Vocabulary() {
    const Sort& I = int_sort();
    const Sort& B = bool_sort();
    auto add = [&](std::string n, std::vector<Sort> a, const Sort& r, Op op) {
      auto f = theory_symbol(std::move(n), std::move(a), r, op);
      by_op[op] = f;
      ordered.push_back(f);
    };
    add("+", {I, I}, I, Op::Add);
    add("-", {I, I}, I, Op::Sub);
    add("*", {I, I}, I, Op::Mul);
    add("neg", {I}, I, Op::Neg);
    add("<=", {I, I}, B, Op::Le);
    add("<", {I, I}, B, Op::Lt);
    add(">=", {I, I}, B, Op::Ge);
    add(">", {I, I}, B, Op::Gt);
    add("=", {I, I}, B, Op::Eq);
    add("/\\", {B, B}, B, Op::And);
    add("\\/", {B, B}, B, Op::Or);
    add("not", {B}, B, Op::Not);
    add("=>", {B, B}, B, Op::Implies);
    add("<=>", {B, B}, B, Op::Iff);
  }
};

const Vocabulary& vocab() {
  static const Vocabulary v;
  return v;
}

}  // namespace

SymbolRef symbol(Op op, const Sort& operand) {
  if (op == Op::Eq && operand == bool_sort()) op = Op::Iff;
  auto it = vocab().by_op.find(op);
  if (it == vocab().by_op.end()) throw Error("no theory symbol for this operation");
  return it->second;
}

const std::vector<SymbolRef>& symbols() { return vocab().ordered; }

Term value(const Sort& sort, Element v) {
  auto f = std::make_shared<FunSym>();
  if (sort == bool_sort()) {
    f->name = v ? "true" : "false";
    v = v ? 1 : 0;
  } else {
    f->name = std::to_string(v);
  }
  f->result = sort;
  f->kind = SymbolKind::Theory;
  f->op = Op::Value;
  f->value = v;
  return Term::apply(std::move(f));
}

Term int_val(Element v) { return value(int_sort(), v); }

Term bool_val(bool v) {
  static const Term t = value(bool_sort(), 1);
  static const Term f = value(bool_sort(), 0);
  return v ? t : f;
}

Term add(Term a, Term b) { return Term::apply(symbol(Op::Add), {std::move(a), std::move(b)}); }
Term sub(Term a, Term b) { return Term::apply(symbol(Op::Sub), {std::move(a), std::move(b)}); }
Term mul(Term a, Term b) { return Term::apply(symbol(Op::Mul), {std::move(a), std::move(b)}); }
Term neg(Term a) { return Term::apply(symbol(Op::Neg), {std::move(a)}); }
Term le(Term a, Term b) { return Term::apply(symbol(Op::Le), {std::move(a), std::move(b)}); }
Term lt(Term a, Term b) { return Term::apply(symbol(Op::Lt), {std::move(a), std::move(b)}); }
Term ge(Term a, Term b) { return Term::apply(symbol(Op::Ge), {std::move(a), std::move(b)}); }
Term gt(Term a, Term b) { return Term::apply(symbol(Op::Gt), {std::move(a), std::move(b)}); }

Term eq(Term a, Term b) {
  const Sort s = a.sort();
  return Term::apply(symbol(Op::Eq, s), {std::move(a), std::move(b)});
}

Term conj(Term a, Term b) { return Term::apply(symbol(Op::And), {std::move(a), std::move(b)}); }

Term conj(const std::vector<Term>& parts) {
  if (parts.empty()) return truth();
  Term acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

Term disj(Term a, Term b) { return Term::apply(symbol(Op::Or), {std::move(a), std::move(b)}); }
Term negation(Term a) { return Term::apply(symbol(Op::Not), {std::move(a)}); }
Term implies(Term a, Term b) { return Term::apply(symbol(Op::Implies), {std::move(a), std::move(b)}); }
Term iff(Term a, Term b) { return Term::apply(symbol(Op::Iff), {std::move(a), std::move(b)}); }

std::vector<Term> conjuncts(const Term& t) {
  std::vector<Term> out;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    if (u.is_app() && u.head().op == Op::And) {
      walk(u.arg(0));
      walk(u.arg(1));
    } else {
      out.push_back(u);
    }
  };
  walk(t);
  return out;
}

}  // namespace th

}  // namespace lctrs
