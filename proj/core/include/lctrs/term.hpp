#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace lctrs {

/// Carrier element of a theory sort. Booleans are encoded as 0/1.
using Element = std::int64_t;

enum class SortKind { Theory, Term };

/// A sort is identified by its name; the kind records which half of the
/// partitioned sort universe it belongs to.
struct Sort {
  std::string name;
  SortKind kind = SortKind::Term;

  bool is_theory() const { return kind == SortKind::Theory; }

  friend bool operator==(const Sort& a, const Sort& b) { return a.name == b.name; }
  friend std::strong_ordering operator<=>(const Sort& a, const Sort& b) {
    return a.name <=> b.name;
  }
};

const Sort& bool_sort();
const Sort& int_sort();

enum class SymbolKind { Theory, Term };

/// Interpreted operation of a theory symbol. `None` marks term symbols.
enum class Op {
  None,
  Value,
  Add,
  Sub,
  Mul,
  Neg,
  Le,
  Lt,
  Ge,
  Gt,
  Eq,
  And,
  Or,
  Not,
  Implies,
  Iff,
};

struct FunSym {
  std::string name;
  std::vector<Sort> arg_sorts;
  Sort result;
  SymbolKind kind = SymbolKind::Term;
  Op op = Op::None;
  Element value = 0;  // payload when op == Op::Value

  std::size_t arity() const { return arg_sorts.size(); }
  bool is_value() const { return op == Op::Value; }
  bool is_theory() const { return kind == SymbolKind::Theory; }
};

using SymbolRef = std::shared_ptr<const FunSym>;

bool same_symbol(const FunSym& a, const FunSym& b);

/// Declares a term symbol. Throws SortMismatch when a theory-kind symbol
/// would mention a term sort.
SymbolRef make_symbol(std::string name, std::vector<Sort> args, Sort result,
                      SymbolKind kind = SymbolKind::Term);

struct Var {
  std::string name;
  Sort sort;

  friend bool operator==(const Var&, const Var&) = default;
  friend std::strong_ordering operator<=>(const Var& a, const Var& b) {
    if (auto c = a.name <=> b.name; c != 0) return c;
    return a.sort <=> b.sort;
  }
};

using VarSet = std::set<Var>;

/// Immutable first-order term with structural equality. Copies share the
/// underlying node.
class Term {
 public:
  Term();  // the Boolean value `true`

  static Term variable(Var v);
  static Term variable(std::string name, Sort sort);
  /// Checks arity and argument sorts against the head's declaration.
  static Term apply(SymbolRef head, std::vector<Term> args = {});

  bool is_var() const;
  bool is_app() const { return !is_var(); }
  bool is_value() const;
  const Var& var() const;
  const FunSym& head() const;
  const SymbolRef& head_ref() const;
  const std::vector<Term>& args() const;
  const Term& arg(std::size_t i) const { return args().at(i); }
  const Sort& sort() const;

  std::size_t hash() const;
  std::size_t size() const;
  std::size_t depth() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

VarSet vars_of(const Term& t);
/// Variables in left-to-right first-occurrence order.
std::vector<Var> vars_in_order(const Term& t);
void collect_vars(const Term& t, VarSet& out);
std::set<Term> vals_of(const Term& t);
bool is_linear(const Term& t);
bool is_value_free(const Term& t);
/// Built only from theory symbols and theory-sorted variables.
bool is_theory_term(const Term& t);
/// A theory term of sort Bool.
bool is_constraint(const Term& t);

/// Theory vocabulary shared by every model.
namespace th {

SymbolRef symbol(Op op, const Sort& operand = int_sort());
/// Every non-value theory symbol, in a fixed order.
const std::vector<SymbolRef>& symbols();

Term int_val(Element v);
Term bool_val(bool v);
Term value(const Sort& sort, Element v);
inline Term truth() { return bool_val(true); }

Term add(Term a, Term b);
Term sub(Term a, Term b);
Term mul(Term a, Term b);
Term neg(Term a);
Term le(Term a, Term b);
Term lt(Term a, Term b);
Term ge(Term a, Term b);
Term gt(Term a, Term b);
Term eq(Term a, Term b);
Term conj(Term a, Term b);
Term conj(const std::vector<Term>& parts);
Term disj(Term a, Term b);
Term negation(Term a);
Term implies(Term a, Term b);
Term iff(Term a, Term b);

/// Splits nested conjunctions into their leaves, left to right.
std::vector<Term> conjuncts(const Term& t);

}  // namespace th

}  // namespace lctrs
