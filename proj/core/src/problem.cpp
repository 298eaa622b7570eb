#include "lctrs/problem.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "lctrs/errors.hpp"
#include "lctrs/printer.hpp"

namespace lctrs {

const ECTerm* ProblemFile::find_query(const std::string& id) const {
  for (const auto& [name, c] : queries)
    if (name == id) return &c;
  return nullptr;
}

SymbolRef ProblemFile::find_symbol(const std::string& name) const {
  for (const auto& f : signature)
    if (f->name == name) return f;
  return nullptr;
}

namespace {

enum class Tok { Ident, Number, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int col = 0;
};

const char* const kSymbols[] = {"<=>", "<=", "<", "->", "-", "=>", "=", ">=", ">", "/\\", "\\/",
                                "(",   ")",  "[", "]",  "{", "}",  ",", ":", "+",  "*"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '#';
}

std::vector<Token> lex(const std::string& line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    int col = static_cast<int>(i) + 1;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Tok::Ident, line.substr(i, j - i), col});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      out.push_back({Tok::Number, line.substr(i, j - i), col});
      i = j;
      continue;
    }
    bool matched = false;
    for (const char* s : kSymbols) {
      std::string sym(s);
      if (line.compare(i, sym.size(), sym) == 0) {
        out.push_back({Tok::Sym, sym, col});
        i += sym.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(line_no, col, "a token");
  }
  out.push_back({Tok::End, "", static_cast<int>(line.size()) + 1});
  return out;
}

std::string strip_comment(const std::string& line) {
  for (std::size_t i = 0; i < line.size(); ++i)
    if (line[i] == '#' && (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1]))))
      return line.substr(0, i);
  return line;
}

struct Ast {
  enum Kind { Num, Name, Call, Unary, Binary } kind = Name;
  std::string text;
  Element num = 0;
  std::vector<Ast> kids;
  int col = 0;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, int line_no) : toks_(std::move(toks)), line_(line_no) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at_sym(const std::string& s) const { return peek().kind == Tok::Sym && peek().text == s; }
  bool at_word(const std::string& w) const { return peek().kind == Tok::Ident && peek().text == w; }
  bool at_end() const { return peek().kind == Tok::End; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, peek().col, what); }
  int line() const { return line_; }

  void expect_sym(const std::string& s) {
    if (!at_sym(s)) fail("'" + s + "'");
    ++pos_;
  }
  void expect_word(const std::string& w) {
    if (!at_word(w)) fail("'" + w + "'");
    ++pos_;
  }
  std::string ident(const std::string& what = "an identifier") {
    if (peek().kind != Tok::Ident) fail(what);
    return toks_[pos_++].text;
  }
  Element number() {
    if (peek().kind != Tok::Number) fail("a number");
    return std::stoll(toks_[pos_++].text);
  }
  void expect_end() {
    if (!at_end()) fail("end of line");
  }

  std::vector<std::string> name_list(const std::string& open, const std::string& close) {
    std::vector<std::string> out;
    expect_sym(open);
    if (!at_sym(close)) {
      out.push_back(ident("a variable name"));
      while (at_sym(",")) {
        ++pos_;
        out.push_back(ident("a variable name"));
      }
    }
    expect_sym(close);
    return out;
  }

  Ast expr() {
    Ast lhs = disjunction();
    if (at_sym("=>") || at_sym("<=>")) {
      Ast n = binary(lhs);
      n.kids.push_back(expr());
      return n;
    }
    return lhs;
  }

 private:
  Ast binary(Ast lhs) {
    Ast n;
    n.kind = Ast::Binary;
    n.col = peek().col;
    n.text = toks_[pos_++].text;
    n.kids.push_back(std::move(lhs));
    return n;
  }

  Ast disjunction() {
    Ast lhs = conjunction();
    while (at_sym("\\/")) {
      Ast n = binary(std::move(lhs));
      n.kids.push_back(conjunction());
      lhs = std::move(n);
    }
    return lhs;
  }

  Ast conjunction() {
    Ast lhs = negation();
    while (at_sym("/\\")) {
      Ast n = binary(std::move(lhs));
      n.kids.push_back(negation());
      lhs = std::move(n);
    }
    return lhs;
  }

  Ast negation() {
    if (at_word("not")) {
      Ast n;
      n.kind = Ast::Unary;
      n.text = "not";
      n.col = peek().col;
      ++pos_;
      n.kids.push_back(negation());
      return n;
    }
    return comparison();
  }

  Ast comparison() {
    Ast lhs = additive();
    if (at_sym("<=") || at_sym("<") || at_sym(">=") || at_sym(">") || at_sym("=")) {
      Ast n = binary(std::move(lhs));
      n.kids.push_back(additive());
      return n;
    }
    return lhs;
  }

  Ast additive() {
    Ast lhs = multiplicative();
    while (at_sym("+") || at_sym("-")) {
      Ast n = binary(std::move(lhs));
      n.kids.push_back(multiplicative());
      lhs = std::move(n);
    }
    return lhs;
  }

  Ast multiplicative() {
    Ast lhs = unary();
    while (at_sym("*")) {
      Ast n = binary(std::move(lhs));
      n.kids.push_back(unary());
      lhs = std::move(n);
    }
    return lhs;
  }

  Ast unary() {
    if (at_sym("-")) {
      int col = peek().col;
      ++pos_;
      if (peek().kind == Tok::Number) {
        Ast n;
        n.kind = Ast::Num;
        n.col = col;
        n.num = -number();
        return n;
      }
      Ast n;
      n.kind = Ast::Unary;
      n.text = "-";
      n.col = col;
      n.kids.push_back(unary());
      return n;
    }
    return atom();
  }

  Ast atom() {
    Ast n;
    n.col = peek().col;
    if (peek().kind == Tok::Number) {
      n.kind = Ast::Num;
      n.num = number();
      return n;
    }
    if (at_sym("(")) {
      ++pos_;
      Ast inner = expr();
      expect_sym(")");
      return inner;
    }
    if (peek().kind != Tok::Ident) fail("a term");
    n.text = ident();
    if (at_sym("(")) {
      n.kind = Ast::Call;
      ++pos_;
      if (!at_sym(")")) {
        n.kids.push_back(expr());
        while (at_sym(",")) {
          ++pos_;
          n.kids.push_back(expr());
        }
      }
      expect_sym(")");
    }
    return n;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
};

/// Turns syntax into sorted terms; variable sorts are inferred per statement.
class Elaborator {
 public:
  Elaborator(const ProblemFile& p, int line_no) : p_(p), line_(line_no) {}

  void note(const Ast& a, const std::optional<Sort>& expected) {
    switch (a.kind) {
      case Ast::Num: return;
      case Ast::Name:
        if (is_symbol(a.text) || a.text == "true" || a.text == "false") return;
        if (expected && !env_.count(a.text)) {
          env_[a.text] = *expected;
          changed_ = true;
        }
        return;
      case Ast::Call: {
        SymbolRef f = p_.find_symbol(a.text);
        if (!f) return;
        for (std::size_t i = 0; i < a.kids.size() && i < f->arity(); ++i) note(a.kids[i], f->arg_sorts[i]);
        return;
      }
      case Ast::Unary: note(a.kids[0], a.text == "not" ? bool_sort() : int_sort()); return;
      case Ast::Binary: {
        const std::string& op = a.text;
        if (op == "=") {
          auto s = known(a.kids[0]);
          if (!s) s = known(a.kids[1]);
          note(a.kids[0], s);
          note(a.kids[1], s);
        } else if (op == "/\\" || op == "\\/" || op == "=>" || op == "<=>") {
          note(a.kids[0], bool_sort());
          note(a.kids[1], bool_sort());
        } else {
          note(a.kids[0], int_sort());
          note(a.kids[1], int_sort());
        }
        return;
      }
    }
  }

  /// Repeats inference until no variable sort changes.
  void infer(const std::vector<std::pair<const Ast*, std::optional<Sort>>>& parts) {
    for (int round = 0; round < 8; ++round) {
      changed_ = false;
      for (const auto& [a, s] : parts) note(*a, s);
      if (!changed_) break;
    }
  }

  Var var(const std::string& name) const {
    auto it = env_.find(name);
    return Var{name, it == env_.end() ? int_sort() : it->second};
  }

  Term build(const Ast& a) const {
    try {
      return build_unchecked(a);
    } catch (const SortMismatch& e) {
      throw ParseError(line_, a.col, std::string("a well-sorted term (") + e.what() + ")");
    }
  }

 private:
  bool is_symbol(const std::string& name) const { return p_.find_symbol(name) != nullptr; }

  std::optional<Sort> known(const Ast& a) const {
    switch (a.kind) {
      case Ast::Num: return int_sort();
      case Ast::Name: {
        if (a.text == "true" || a.text == "false") return bool_sort();
        if (auto f = p_.find_symbol(a.text)) return f->result;
        auto it = env_.find(a.text);
        if (it != env_.end()) return it->second;
        return std::nullopt;
      }
      case Ast::Call: {
        if (auto f = p_.find_symbol(a.text)) return f->result;
        return std::nullopt;
      }
      case Ast::Unary: return a.text == "not" ? bool_sort() : int_sort();
      case Ast::Binary: {
        const std::string& op = a.text;
        if (op == "+" || op == "-" || op == "*") return int_sort();
        return bool_sort();
      }
    }
    return std::nullopt;
  }

  Term build_unchecked(const Ast& a) const {
    switch (a.kind) {
      case Ast::Num: return p_.model.value_term(int_sort(), a.num);
      case Ast::Name: {
        if (a.text == "true") return th::bool_val(true);
        if (a.text == "false") return th::bool_val(false);
        if (auto f = p_.find_symbol(a.text)) return Term::apply(f);
        return Term::variable(var(a.text));
      }
      case Ast::Call: {
        SymbolRef f = p_.find_symbol(a.text);
        if (!f) throw ParseError(line_, a.col, "a declared function symbol instead of '" + a.text + "'");
        std::vector<Term> args;
        for (const auto& k : a.kids) args.push_back(build_unchecked(k));
        return Term::apply(f, std::move(args));
      }
      case Ast::Unary:
        if (a.text == "not") return th::negation(build_unchecked(a.kids[0]));
        return th::neg(build_unchecked(a.kids[0]));
      case Ast::Binary: {
        Term l = build_unchecked(a.kids[0]);
        Term r = build_unchecked(a.kids[1]);
        const std::string& op = a.text;
        if (op == "+") return th::add(l, r);
        if (op == "-") return th::sub(l, r);
        if (op == "*") return th::mul(l, r);
        if (op == "<=") return th::le(l, r);
        if (op == "<") return th::lt(l, r);
        if (op == ">=") return th::ge(l, r);
        if (op == ">") return th::gt(l, r);
        if (op == "=") return th::eq(l, r);
        if (op == "/\\") return th::conj(l, r);
        if (op == "\\/") return th::disj(l, r);
        if (op == "=>") return th::implies(l, r);
        return th::iff(l, r);
      }
    }
    throw ParseError(line_, a.col, "a term");
  }

  const ProblemFile& p_;
  int line_;
  std::map<std::string, Sort> env_;
  bool changed_ = false;
};

Sort sort_named(const std::string& name) {
  if (name == "Int") return int_sort();
  if (name == "Bool") return bool_sort();
  return Sort{name, SortKind::Term};
}

bool reserved(const std::string& name) {
  return name == "not" || name == "true" || name == "false" || name == "neg";
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  ProblemFile p;
  std::vector<ConstrainedRule> rules;
  std::set<std::string> ids;
  bool seen_theory = false;
  bool seen_other = false;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    Parser ps(lex(strip_comment(raw), line_no), line_no);
    if (ps.at_end()) continue;
    std::string kw = ps.ident("a statement keyword");
    if (kw == "theory") {
      if (seen_theory) ps.fail("a single theory declaration");
      if (seen_other) ps.fail("the theory declaration before other statements");
      std::string which = ps.ident("'intmod' or 'int'");
      if (which == "intmod") {
        Element m = ps.number();
        try {
          p.model = TheoryModel::int_mod(m);
        } catch (const ConfigError&) {
          throw ParseError(line_no, 1, "a modulus between 1 and 2^30");
        }
      } else if (which == "int") {
        p.model = TheoryModel::integers();
      } else {
        throw ParseError(line_no, 8, "'intmod' or 'int'");
      }
      ps.expect_end();
      seen_theory = true;
      continue;
    }
    seen_other = true;
    if (kw == "sig") {
      std::string name = ps.ident("a symbol name");
      if (reserved(name) || p.find_symbol(name)) throw ValidationError(name, "symbol name is reserved or already declared");
      ps.expect_sym(":");
      std::vector<Sort> args;
      Sort result;
      if (ps.at_sym("->")) {
        ps.expect_sym("->");
        result = sort_named(ps.ident("a sort"));
      } else {
        args.push_back(sort_named(ps.ident("a sort")));
        while (ps.at_sym("*")) {
          ps.expect_sym("*");
          args.push_back(sort_named(ps.ident("a sort")));
        }
        if (ps.at_sym("->")) {
          ps.expect_sym("->");
          result = sort_named(ps.ident("a sort"));
        } else if (args.size() == 1) {
          result = args.front();
          args.clear();
        } else {
          ps.fail("'->'");
        }
      }
      if (!ps.at_end()) {
        std::string kind = ps.ident("'term' or 'theory'");
        if (kind == "theory") throw ValidationError(name, "user-declared theory symbols have no interpretation");
        if (kind != "term") throw ParseError(line_no, 1, "'term' or 'theory'");
      }
      ps.expect_end();
      p.signature.push_back(make_symbol(name, args, result));
      continue;
    }
    if (kw == "rule") {
      std::string id = ps.ident("a rule identifier");
      if (!ids.insert(id).second) throw ValidationError(id, "duplicate identifier");
      ps.expect_sym(":");
      Ast lhs = ps.expr();
      ps.expect_sym("->");
      Ast rhs = ps.expr();
      std::optional<Ast> guard;
      if (ps.at_sym("[")) {
        ps.expect_sym("[");
        guard = ps.expr();
        ps.expect_sym("]");
      }
      std::vector<std::string> zs;
      if (ps.at_word("vars")) {
        ps.expect_word("vars");
        zs = ps.name_list("{", "}");
      }
      ps.expect_end();
      Elaborator el(p, line_no);
      std::vector<std::pair<const Ast*, std::optional<Sort>>> parts{{&lhs, std::nullopt}, {&rhs, std::nullopt}};
      if (guard) parts.emplace_back(&*guard, bool_sort());
      el.infer(parts);
      ConstrainedRule r;
      r.id = id;
      r.lhs = el.build(lhs);
      r.rhs = el.build(rhs);
      if (guard) r.guard = el.build(*guard);
      for (const auto& z : zs) r.theory_vars.insert(el.var(z));
      RuleCheck check = validate_rule(r);
      if (!check.ok) throw ValidationError(id, check.violation);
      if (!check.left_linear) throw ValidationError(id, "left-hand side is not linear");
      rules.push_back(std::move(r));
      continue;
    }
    if (kw == "ect") {
      std::string id = ps.ident("a term identifier");
      if (!ids.insert(id).second) throw ValidationError(id, "duplicate identifier");
      ps.expect_sym(":");
      std::vector<std::string> xs;
      if (ps.at_word("X")) {
        ps.expect_word("X");
        xs = ps.name_list("{", "}");
      }
      ps.expect_word("term");
      Ast term = ps.expr();
      std::vector<std::string> bound;
      if (ps.at_word("exists")) {
        ps.expect_word("exists");
        bound = ps.name_list("[", "]");
      }
      std::optional<Ast> phi;
      if (ps.at_word("phi")) {
        ps.expect_word("phi");
        phi = ps.expr();
      }
      ps.expect_end();
      Elaborator el(p, line_no);
      std::vector<std::pair<const Ast*, std::optional<Sort>>> parts{{&term, std::nullopt}};
      if (phi) parts.emplace_back(&*phi, bool_sort());
      el.infer(parts);
      ECTerm c;
      c.term = el.build(term);
      for (const auto& x : xs) c.logical.insert(el.var(x));
      for (const auto& w : bound) c.constraint.bound.push_back(el.var(w));
      if (phi) c.constraint.body = el.build(*phi);
      WellFormedness wf = well_formed(c);
      if (!wf.ok) throw ValidationError(id, wf.diagnostic);
      p.queries.emplace_back(id, std::move(c));
      continue;
    }
    throw ParseError(line_no, 1, "'theory', 'sig', 'rule' or 'ect'");
  }
  p.system = LCTRS::with_calculation(std::move(rules));
  return p;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

namespace {

std::string join_names(const std::vector<Var>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += xs[i].name;
  }
  return s;
}

}  // namespace

std::string print_problem(const ProblemFile& p) {
  std::string out = "theory " + p.model.describe() + "\n";
  for (const auto& f : p.signature) {
    out += "sig " + f->name + " : ";
    for (std::size_t i = 0; i < f->arity(); ++i) {
      if (i) out += " * ";
      out += f->arg_sorts[i].name;
    }
    out += (f->arity() ? " -> " : "-> ") + f->result.name + "\n";
  }
  for (const auto& r : p.system.user_rules()) out += "rule " + show(r) + "\n";
  for (const auto& [id, c] : p.queries) {
    std::vector<Var> xs(c.logical.begin(), c.logical.end());
    out += "ect " + id + ": X {" + join_names(xs) + "} term " + show(c.term) + " exists [" +
           join_names(c.constraint.bound) + "] phi " + show(c.constraint.body) + "\n";
  }
  return out;
}

Term parse_term(const ProblemFile& p, const std::string& text) {
  Parser ps(lex(text, 1), 1);
  Ast a = ps.expr();
  ps.expect_end();
  Elaborator el(p, 1);
  el.infer({{&a, std::nullopt}});
  return el.build(a);
}

}  // namespace lctrs
