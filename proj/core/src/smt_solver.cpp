#include "lctrs/smt_solver.hpp"

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <functional>

#include "lctrs/errors.hpp"
#include "lctrs/sexpr.hpp"

namespace lctrs {

namespace {

std::string quote(const std::string& name) { return "|" + name + "|"; }

std::string sort_name(const Sort& s) { return s == bool_sort() ? "Bool" : "Int"; }

std::string literal(Element v) { return v < 0 ? "(- " + std::to_string(-v) + ")" : std::to_string(v); }

bool nonlinear(const Term& t) {
  if (t.is_var()) return false;
  if (t.head().op == Op::Mul && !t.arg(0).is_value() && !t.arg(1).is_value()) return true;
  return std::any_of(t.args().begin(), t.args().end(), nonlinear);
}

std::string binder(const std::vector<Var>& xs) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ' ';
    s += "(" + quote(xs[i].name) + " " + sort_name(xs[i].sort) + ")";
  }
  return s + ")";
}

std::string existential(const ExistentialConstraint& ec) {
  std::string body = SmtBackend::to_smt(ec.body);
  if (ec.bound.empty()) return body;
  return "(exists " + binder(ec.bound) + " " + body + ")";
}

Element parse_value(const SExpr& e) {
  if (e.atom) {
    if (e.text == "true") return 1;
    if (e.text == "false") return 0;
    return std::stoll(e.text);
  }
  if (e.items.size() == 2 && e.items[0].atom && e.items[0].text == "-") return -parse_value(e.items[1]);
  throw BackendFailure("unsupported model value " + e.str());
}

std::vector<Var> free_union(const ExistentialConstraint& a, const ExistentialConstraint* b) {
  std::vector<Var> out;
  auto add = [&](const ExistentialConstraint& ec) {
    VarSet bound = ec.bound_vars();
    for (const auto& x : vars_in_order(ec.body))
      if (!bound.count(x) && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  };
  add(a);
  if (b) add(*b);
  return out;
}

}  // namespace

std::string SmtBackend::to_smt(const Term& t) {
  if (t.is_var()) return quote(t.var().name);
  const FunSym& f = t.head();
  if (!f.is_theory()) throw NonTheoryTerm("term symbol " + f.name + " in a constraint");
  if (f.is_value()) return f.result == bool_sort() ? (f.value ? "true" : "false") : literal(f.value);
  std::string op;
  switch (f.op) {
    case Op::Add: op = "+"; break;
    case Op::Sub: op = "-"; break;
    case Op::Mul: op = "*"; break;
    case Op::Neg: op = "-"; break;
    case Op::Le: op = "<="; break;
    case Op::Lt: op = "<"; break;
    case Op::Ge: op = ">="; break;
    case Op::Gt: op = ">"; break;
    case Op::Eq: op = "="; break;
    case Op::And: op = "and"; break;
    case Op::Or: op = "or"; break;
    case Op::Not: op = "not"; break;
    case Op::Implies: op = "=>"; break;
    case Op::Iff: op = "="; break;
    default: throw NonTheoryTerm("no SMT-LIB operator for " + f.name);
  }
  std::string s = "(" + op;
  for (const auto& a : t.args()) s += " " + to_smt(a);
  return s + ")";
}

SmtBackend::SmtBackend(SmtOptions opts) : opts_(std::move(opts)) { start(); }

SmtBackend::~SmtBackend() { stop(); }

void SmtBackend::start() {
  signal(SIGPIPE, SIG_IGN);
  int in[2];
  int out[2];
  if (pipe(in) != 0 || pipe(out) != 0) throw BackendFailure(std::string("pipe: ") + std::strerror(errno));
  pid_t pid = fork();
  if (pid < 0) throw BackendFailure(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    dup2(in[0], STDIN_FILENO);
    dup2(out[1], STDOUT_FILENO);
    dup2(out[1], STDERR_FILENO);
    close(in[0]);
    close(in[1]);
    close(out[0]);
    close(out[1]);
    std::string t = "-t:" + std::to_string(opts_.timeout_ms);
    execlp(opts_.binary.c_str(), opts_.binary.c_str(), "-in", "-smt2", t.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in[0]);
  close(out[1]);
  pid_ = pid;
  to_child_ = in[1];
  from_child_ = out[0];
  buffer_.clear();
}

void SmtBackend::stop() {
  if (pid_ < 0) return;
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  kill(pid_, SIGKILL);
  waitpid(pid_, nullptr, 0);
  pid_ = -1;
  to_child_ = from_child_ = -1;
}

void SmtBackend::send(const std::string& text) {
  std::size_t done = 0;
  while (done < text.size()) {
    ssize_t n = write(to_child_, text.data() + done, text.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw BackendFailure("solver process closed its input");
    }
    done += static_cast<std::size_t>(n);
  }
}

std::string SmtBackend::read_response() {
  using clock = std::chrono::steady_clock;
  auto deadline = clock::now() + std::chrono::milliseconds(opts_.timeout_ms + 2000);
  for (;;) {
    std::size_t pos = 0;
    if (auto e = parse_sexpr(buffer_, pos)) {
      buffer_.erase(0, pos);
      return e->str();
    }
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - clock::now()).count();
    if (left <= 0) {
      stop();
      start();
      return "timeout";
    }
    pollfd p{from_child_, POLLIN, 0};
    int r = poll(&p, 1, static_cast<int>(left));
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) continue;
    char chunk[4096];
    ssize_t n = read(from_child_, chunk, sizeof chunk);
    if (n <= 0) {
      stop();
      throw BackendFailure("solver process " + opts_.binary + " exited unexpectedly");
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

SolverVerdict SmtBackend::run(const std::vector<Var>& free, const std::string& assertion, bool validity,
                              bool nia) {
  if (pid_ < 0) start();
  std::string q = "(reset)\n(set-option :produce-models true)\n";
  q += "(set-option :timeout " + std::to_string(opts_.timeout_ms) + ")\n";
  q += "(set-logic " + std::string(nia ? "NIA" : "LIA") + ")\n";
  for (const auto& x : free) q += "(declare-const " + quote(x.name) + " " + sort_name(x.sort) + ")\n";
  q += "(assert " + assertion + ")\n(check-sat)\n";
  send(q);
  std::string answer = read_response();
  if (answer.rfind("(error", 0) == 0) throw BackendFailure("solver error: " + answer);
  if (answer == "timeout") return SolverVerdict::make_unknown("solver timed out");
  if (answer == "unknown") return SolverVerdict::make_unknown("solver answered unknown");
  if (answer == "unsat") return validity ? SolverVerdict::make_sat() : SolverVerdict::make_unsat();
  if (answer != "sat") throw BackendFailure("unexpected solver answer: " + answer);
  Valuation rho;
  for (const auto& x : free) rho[x] = 0;
  if (!free.empty()) {
    send("(get-model)\n");
    std::string text = read_response();
    if (text == "timeout") return SolverVerdict::make_unknown("solver timed out producing a model");
    std::size_t pos = 0;
    auto model = parse_sexpr(text + "\n", pos);
    if (!model || model->atom) throw BackendFailure("malformed model: " + text);
    for (const auto& def : model->items) {
      if (def.atom || def.items.size() != 5 || def.items[0].text != "define-fun") continue;
      for (const auto& x : free)
        if (x.name == def.items[1].text) rho[x] = parse_value(def.items[4]);
    }
  }
  return validity ? SolverVerdict::make_unsat(rho) : SolverVerdict::make_sat(rho);
}

SolverVerdict SmtBackend::check_sat(const ExistentialConstraint& ec) {
  return run(free_union(ec, nullptr), existential(ec), false, nonlinear(ec.body));
}

SolverVerdict SmtBackend::check_valid_implication(const ExistentialConstraint& lhs,
                                                  const ExistentialConstraint& rhs) {
  std::string goal = "(not (=> " + existential(lhs) + " " + existential(rhs) + "))";
  return run(free_union(lhs, &rhs), goal, true, nonlinear(lhs.body) || nonlinear(rhs.body));
}

bool SmtBackend::available(const SmtOptions& opts) {
  try {
    SmtBackend probe(opts);
    return probe.check_sat(ExistentialConstraint(th::truth())).sat();
  } catch (const Error&) {
    return false;
  }
}

}  // namespace lctrs
