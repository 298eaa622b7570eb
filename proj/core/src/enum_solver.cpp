#include "lctrs/enum_solver.hpp"

#include <algorithm>
#include <map>

#include "lctrs/errors.hpp"

namespace lctrs {

namespace {

struct Node {
  Op op = Op::Value;
  Element c = 0;
  int var = -1;
  int a = -1;
  int b = -1;
  bool is_int = true;
};

/// Flattened constraint over variable slots; fixed variables are constants.
class Program {
 public:
  Program(const TheoryModel& m, std::map<Var, int> slots, const Valuation& fixed)
      : model_(m), slots_(std::move(slots)), fixed_(fixed) {}

  int compile(const Term& t) {
    Node n;
    n.is_int = t.sort() == int_sort();
    if (t.is_var()) {
      auto f = fixed_.find(t.var());
      if (f != fixed_.end()) {
        n.c = model_.normalize(t.sort(), f->second);
      } else {
        n.op = Op::None;
        n.var = slots_.at(t.var());
      }
    } else {
      const FunSym& f = t.head();
      if (!f.is_theory()) throw NonTheoryTerm("term symbol " + f.name + " in a constraint");
      if (f.is_value()) {
        n.c = model_.normalize(f.result, f.value);
      } else {
        n.op = f.op;
        n.a = compile(t.arg(0));
        if (t.args().size() > 1) n.b = compile(t.arg(1));
      }
    }
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
  }

  Element eval(int i, const std::vector<Element>& vals) const {
    const Node& n = nodes_[i];
    switch (n.op) {
      case Op::Value: return n.c;
      case Op::None: return vals[n.var];
      case Op::And: return eval(n.a, vals) && eval(n.b, vals);
      case Op::Or: return eval(n.a, vals) || eval(n.b, vals);
      case Op::Implies: return !eval(n.a, vals) || eval(n.b, vals);
      case Op::Neg:
      case Op::Not: return model_.apply(n.op, {eval(n.a, vals)});
      default: return model_.apply(n.op, {eval(n.a, vals), eval(n.b, vals)});
    }
  }

  const Node& node(int i) const { return nodes_[i]; }

 private:
  const TheoryModel& model_;
  std::map<Var, int> slots_;
  const Valuation& fixed_;
  std::vector<Node> nodes_;
};

struct Conjunct {
  int root = -1;
  std::vector<int> slots;
  int def_target = -1;  // slot x when the conjunct reads x = e
  int def_expr = -1;
  std::vector<int> def_slots;
};

void slot_vars(const Term& t, const std::map<Var, int>& slots, std::vector<int>& out) {
  for (const auto& v : vars_of(t)) {
    auto it = slots.find(v);
    if (it != slots.end()) out.push_back(it->second);
  }
}

class Search {
 public:
  Search(const TheoryModel& m, const EnumerationBackend& backend, const Term& body,
         const std::vector<Var>& project, const Valuation& fixed)
      : backend_(backend) {
    for (const auto& x : project)
      if (!fixed.count(x) && !slot_of_.count(x)) add_slot(x);
    nproj_ = static_cast<int>(vars_.size());
    for (const auto& x : vars_in_order(body))
      if (!fixed.count(x) && !slot_of_.count(x)) add_slot(x);
    program_.emplace(m, slot_of_, fixed);

    for (const auto& part : th::conjuncts(body)) {
      Conjunct c;
      c.root = program_->compile(part);
      slot_vars(part, slot_of_, c.slots);
      if (part.is_app() && (part.head().op == Op::Eq || part.head().op == Op::Iff)) {
        for (int side = 0; side < 2 && c.def_target < 0; ++side) {
          const Term& x = part.arg(side);
          const Term& e = part.arg(1 - side);
          if (!x.is_var() || !slot_of_.count(x.var())) continue;
          int s = slot_of_.at(x.var());
          std::vector<int> es;
          slot_vars(e, slot_of_, es);
          if (std::find(es.begin(), es.end(), s) != es.end()) continue;
          c.def_target = s;
          c.def_expr = program_->compile(e);
          c.def_slots = es;
        }
      }
      conjuncts_.push_back(std::move(c));
    }
    plan();
  }

  /// Visits each distinct projection; returns false if stopped early.
  void run(const std::function<bool(const std::vector<Element>&)>& visit) {
    for (const auto& c : conjuncts_)
      if (c.slots.empty() && !program_->eval(c.root, vals_)) return;
    vals_.assign(vars_.size(), 0);
    visit_ = &visit;
    rec(0);
  }

  const std::vector<Var>& vars() const { return vars_; }
  int position_of(int slot) const { return pos_[slot]; }

 private:
  static constexpr int kStop = -2;

  void add_slot(const Var& x) {
    slot_of_[x] = static_cast<int>(vars_.size());
    vars_.push_back(x);
  }

  // Orders slots: projected ones first, and within each group a variable
  // that some equation defines from already placed ones is computed, not
  // enumerated.
  void plan() {
    const int n = static_cast<int>(vars_.size());
    pos_.assign(n, -1);
    std::vector<bool> placed(n, false);
    auto place_group = [&](int from, int to) {
      std::vector<int> remaining;
      for (int s = from; s < to; ++s) remaining.push_back(s);
      while (!remaining.empty()) {
        int chosen = -1;
        int def = -1;
        for (int s : remaining) {
          for (std::size_t ci = 0; ci < conjuncts_.size() && def < 0; ++ci) {
            const auto& c = conjuncts_[ci];
            if (c.def_target != s) continue;
            if (std::all_of(c.def_slots.begin(), c.def_slots.end(), [&](int v) { return placed[v]; }))
              def = static_cast<int>(ci);
          }
          if (def >= 0) {
            chosen = s;
            break;
          }
        }
        if (chosen < 0) {
          // Prefer a variable no pending equation could compute later.
          for (int s : remaining) {
            bool target = std::any_of(conjuncts_.begin(), conjuncts_.end(), [&](const Conjunct& c) {
              if (c.def_target != s) return false;
              return std::all_of(c.def_slots.begin(), c.def_slots.end(), [&](int v) {
                return placed[v] || (v >= from && v < to && v != s);
              });
            });
            if (!target) {
              chosen = s;
              break;
            }
          }
          if (chosen < 0) chosen = remaining.front();
        }
        pos_[chosen] = static_cast<int>(order_.size());
        order_.push_back(chosen);
        computed_.push_back(def);
        placed[chosen] = true;
        remaining.erase(std::find(remaining.begin(), remaining.end(), chosen));
      }
    };
    place_group(0, nproj_);
    place_group(nproj_, n);
    checks_.assign(n, {});
    for (std::size_t ci = 0; ci < conjuncts_.size(); ++ci) {
      const auto& c = conjuncts_[ci];
      if (c.slots.empty()) continue;
      int last = 0;
      for (int s : c.slots) last = std::max(last, pos_[s]);
      checks_[last].push_back(static_cast<int>(ci));
    }
    for (int s : order_) domains_.push_back(backend_.domain(vars_[s].sort));
  }

  bool checks_pass(int level) const {
    for (int ci : checks_[level])
      if (!program_->eval(conjuncts_[ci].root, vals_)) return false;
    return true;
  }

  int rec(int level) {
    const int n = static_cast<int>(order_.size());
    if (level == n) {
      if (!(*visit_)(vals_)) return kStop;
      return nproj_ == 0 ? kStop : nproj_ - 1;
    }
    const int slot = order_[level];
    auto attempt = [&](Element v) -> int {
      vals_[slot] = v;
      if (!checks_pass(level)) return level;
      return rec(level + 1);
    };
    if (computed_[level] >= 0) {
      Element v = program_->eval(conjuncts_[computed_[level]].def_expr, vals_);
      int r = attempt(v);
      if (r == kStop || r < level) return r;
      return level - 1;
    }
    for (Element v : domains_[level]) {
      int r = attempt(v);
      if (r == kStop || r < level) return r;
    }
    return level - 1;
  }

  const EnumerationBackend& backend_;
  std::map<Var, int> slot_of_;
  std::vector<Var> vars_;
  int nproj_ = 0;
  std::optional<Program> program_;
  std::vector<Conjunct> conjuncts_;
  std::vector<int> order_;
  std::vector<int> pos_;
  std::vector<int> computed_;
  std::vector<std::vector<int>> checks_;
  std::vector<std::vector<Element>> domains_;
  std::vector<Element> vals_;
  const std::function<bool(const std::vector<Element>&)>* visit_ = nullptr;
};

std::vector<Var> ordered_free(const ExistentialConstraint& ec) {
  VarSet bound = ec.bound_vars();
  std::vector<Var> out;
  for (const auto& x : vars_in_order(ec.body))
    if (!bound.count(x)) out.push_back(x);
  return out;
}

}  // namespace

EnumerationBackend::EnumerationBackend(TheoryModel model) : model_(std::move(model)) {
  if (!model_.finite()) throw ConfigError("enumeration over Z needs a window");
}

EnumerationBackend EnumerationBackend::window(Element lo, Element hi) {
  if (lo > hi) throw ConfigError("empty integer window");
  EnumerationBackend b(TheoryModel::int_mod(1));
  b.model_ = TheoryModel::integers();
  b.window_ = std::make_pair(lo, hi);
  return b;
}

std::string EnumerationBackend::name() const {
  if (window_) return "enum[int:" + std::to_string(window_->first) + ".." + std::to_string(window_->second) + "]";
  return "enum[" + model_.describe() + "]";
}

std::vector<Element> EnumerationBackend::domain(const Sort& sort) const {
  if (sort == int_sort() && window_) {
    std::vector<Element> out;
    for (Element v = window_->first; v <= window_->second; ++v) out.push_back(v);
    return out;
  }
  return model_.carrier(sort);
}

void EnumerationBackend::for_each_model(const ExistentialConstraint& ec, const std::vector<Var>& project,
                                        const std::function<bool(const Valuation&)>& visit,
                                        const Valuation& fixed) const {
  if (auto bad = ec.violation()) throw Error("ill-formed constraint: " + *bad);
  // A binder shadows a fixed variable of the same name.
  VarSet bound = ec.bound_vars();
  Valuation own;
  for (const auto& [x, v] : fixed)
    if (!bound.count(x)) own.emplace(x, v);
  Search search(model_, *this, ec.body, project, own);
  search.run([&](const std::vector<Element>& vals) {
    Valuation rho;
    for (const auto& x : project) {
      auto f = own.find(x);
      if (f != own.end()) {
        rho[x] = f->second;
        continue;
      }
      for (std::size_t s = 0; s < search.vars().size(); ++s)
        if (search.vars()[s] == x) rho[x] = vals[s];
    }
    return visit(rho);
  });
}

SolverVerdict EnumerationBackend::check_sat(const ExistentialConstraint& ec) {
  std::optional<Valuation> found;
  for_each_model(ec, ordered_free(ec), [&](const Valuation& rho) {
    found = rho;
    return false;
  });
  if (found) return SolverVerdict::make_sat(*found);
  if (exact()) return SolverVerdict::make_unsat();
  return SolverVerdict::make_unknown("no model inside the integer window");
}

SolverVerdict EnumerationBackend::check_valid_implication(const ExistentialConstraint& lhs,
                                                          const ExistentialConstraint& rhs) {
  std::vector<Var> free = ordered_free(lhs);
  for (const auto& x : ordered_free(rhs))
    if (std::find(free.begin(), free.end(), x) == free.end()) free.push_back(x);
  std::optional<Valuation> counter;
  bool inconclusive = false;
  for_each_model(lhs, free, [&](const Valuation& rho) {
    bool ok = false;
    for_each_model(rhs, {}, [&](const Valuation&) {
          ok = true;
          return false;
        }, rho);
    if (ok) return true;
    if (exact() || rhs.bound.empty()) {
      counter = rho;
      return false;
    }
    inconclusive = true;
    return true;
  });
  if (counter) return SolverVerdict::make_unsat(*counter);
  if (!exact()) {
    return SolverVerdict::make_unknown(inconclusive ? "countervaluation depends on values outside the window"
                                                    : "validity over Z is not decided by a window");
  }
  return SolverVerdict::make_sat();
}

}  // namespace lctrs
