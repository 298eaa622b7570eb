#include "lctrs_cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <fstream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lctrs/engine.hpp"
#include "lctrs/enum_solver.hpp"
#include "lctrs/errors.hpp"
#include "lctrs/harness.hpp"
#include "lctrs/interpretation.hpp"
#include "lctrs/printer.hpp"
#include "lctrs/problem.hpp"
#include "lctrs/smt_solver.hpp"
#include "lctrs/trace.hpp"

namespace lctrs::cli {

namespace {

struct Options {
  std::string smt_bin = "z3";
  int smt_timeout_ms = 5000;

  std::string file;
  std::string query;
  std::string second;
  std::string mode = "partial";
  std::size_t fuel = 40;
  std::string strategy = "full";
  std::size_t max_nodes = 20000;

  std::string kind = "value";
  std::string domain;
  std::size_t pool = 0;
  std::size_t cap = 200000;

  std::string theorem = "all";
  std::uint64_t seed = 42;
  std::size_t cases = 300;
  Element modulus = 5;

  std::string golden;
  std::string write;
};

struct UsageError : Error {
  using Error::Error;
};

Mode parse_mode(const std::string& s) {
  if (s == "mg") return Mode::MostGeneral;
  if (s == "partial") return Mode::Partial;
  throw UsageError("--mode must be mg or partial");
}

Strategy parse_strategy(const std::string& s) {
  if (s == "full") return Strategy::Full;
  if (s == "first") return Strategy::First;
  throw UsageError("--strategy must be full or first");
}

std::unique_ptr<Solver> backend_for(const ProblemFile& p, const Options& o) {
  if (p.model.finite()) return std::make_unique<EnumerationBackend>(p.model);
  SmtOptions smt{o.smt_bin, o.smt_timeout_ms};
  if (!SmtBackend::available(smt)) throw BackendFailure("SMT solver '" + o.smt_bin + "' is not available");
  return std::make_unique<SmtBackend>(smt);
}

const ECTerm& query_of(const ProblemFile& p, const std::string& id) {
  const ECTerm* c = p.find_query(id);
  if (!c) throw Error("no term named " + id);
  return *c;
}

int exit_for(const TriVerdict& v) { return v.unknown() ? kUnknown : kOk; }

void print_verdict(std::ostream& out, const std::string& label, const TriVerdict& v) {
  out << label << ": " << tri_name(v.value) << "\n";
  if (!v.reason.empty()) out << "reason: " << v.reason << "\n";
  if (v.counterexample) out << "witness: " << show(*v.counterexample) << "\n";
}

ReductionResult run_reduce(const ProblemFile& p, const Options& o, Solver& solver) {
  ReduceOptions ro;
  ro.fuel = o.fuel;
  ro.strategy = parse_strategy(o.strategy);
  ro.max_nodes = o.max_nodes;
  return reduce(query_of(p, o.query), p.system, parse_mode(o.mode), solver, ro);
}

int cmd_rewrite(const Options& o, std::ostream& out) {
  ProblemFile p = load_problem(o.file);
  auto solver = backend_for(p, o);
  ReductionResult r = run_reduce(p, o, *solver);
  out << "mode: " << o.mode << "\n";
  out << "nodes: " << r.nodes.size() << (r.truncated ? " (truncated)" : "") << "\n";
  out << "frontier:\n";
  bool unknown = r.truncated;
  for (std::size_t id : r.frontier) {
    const ReductionNode& n = r.nodes[id];
    if (n.tag == NodeTag::UnknownGated) unknown = true;
    out << "  [" << tag_name(n.tag) << "] " << show(n.term) << "\n";
  }
  ValueNormalForms v = value_normal_forms(r, *solver);
  if (!v.complete) unknown = true;
  out << "normal forms:";
  for (const auto& t : v.values) out << " " << show(t);
  out << (v.complete ? "" : " (incomplete)") << "\n";
  return unknown ? kUnknown : kOk;
}

int cmd_normal(const Options& o, std::ostream& out) {
  ProblemFile p = load_problem(o.file);
  auto solver = backend_for(p, o);
  TriVerdict v = is_normal_form(query_of(p, o.query), p.system, parse_mode(o.mode), *solver);
  print_verdict(out, "normal", v);
  return exit_for(v);
}

int cmd_compare(const Options& o, std::ostream& out, bool equiv) {
  ProblemFile p = load_problem(o.file);
  auto solver = backend_for(p, o);
  const ECTerm& a = query_of(p, o.query);
  const ECTerm& b = query_of(p, o.second);
  TriVerdict v = equiv ? equivalent(a, b, *solver) : subsumes(a, b, *solver);
  print_verdict(out, equiv ? "equivalent" : "subsumes", v);
  return exit_for(v);
}

DomainSpec parse_domain(const std::string& text, const ProblemFile& p) {
  if (text.empty()) {
    if (!p.model.finite()) throw UsageError("an int problem needs --domain int:LO..HI");
    return DomainSpec::exact(p.model.modulus());
  }
  try {
    if (text.rfind("mod:", 0) == 0) return DomainSpec::exact(std::stoll(text.substr(4)));
    if (text.rfind("int:", 0) == 0) {
      std::string range = text.substr(4);
      auto dots = range.find("..");
      if (dots == std::string::npos) throw UsageError("--domain int:LO..HI");
      return DomainSpec::integer_window(std::stoll(range.substr(0, dots)), std::stoll(range.substr(dots + 2)));
    }
  } catch (const std::logic_error&) {
  }
  throw UsageError("--domain must be mod:M or int:LO..HI");
}

int cmd_interpret(const Options& o, std::ostream& out) {
  ProblemFile p = load_problem(o.file);
  DomainSpec d = parse_domain(o.domain, p);
  d.max_instances = o.cap;
  std::vector<std::string> lines;
  if (o.kind == "rule") {
    const ConstrainedRule* r = p.system.find(o.query);
    if (!r) throw Error("no rule named " + o.query);
    for (const auto& g : interpret_rule(*r, d)) lines.push_back(show(g.lhs) + " -> " + show(g.rhs));
  } else if (o.kind == "std" || o.kind == "value") {
    const ECTerm& c = query_of(p, o.query);
    std::set<Term> terms;
    if (o.kind == "value") {
      terms = enumerate_value_instances(c, d);
    } else {
      std::set<Sort> sorts;
      for (const auto& x : vars_of(c.term))
        if (!c.logical.count(x)) sorts.insert(x.sort);
      for (const auto& s : sorts)
        for (std::size_t i = 1; i <= o.pool; ++i) d.pool.push_back(Term::variable("z" + std::to_string(i), s));
      terms = enumerate_instances(c, d);
    }
    for (const auto& t : terms) lines.push_back(show(t));
  } else {
    throw UsageError("--kind must be std, value or rule");
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) out << l << "\n";
  out << "count: " << lines.size() << "\n";
  return d.is_exact() ? kOk : kUnknown;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  GenConfig cfg;
  cfg.seed = o.seed;
  cfg.model = TheoryModel::int_mod(o.modulus);
  std::vector<std::string> ids;
  if (o.theorem == "all") {
    ids = theorem_ids();
  } else {
    ids.push_back(o.theorem);
  }
  nlohmann::ordered_json j;
  j["seed"] = o.seed;
  j["cases"] = o.cases;
  j["theory"] = cfg.model.describe();
  j["reports"] = nlohmann::ordered_json::array();
  std::size_t failures = 0;
  for (const auto& id : ids) {
    auto start = std::chrono::steady_clock::now();
    CheckReport r = check(id, cfg, o.cases);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += r.failures.size();
    err << id << ": " << r.cases_run << " cases, " << r.nonvacuous << " nonvacuous, " << r.failures.size()
        << " failures, " << r.unknowns << " unknowns (" << std::fixed << std::setprecision(1) << secs << " s)\n";
    j["reports"].push_back(nlohmann::ordered_json::parse(r.to_json()));
  }
  j["failures"] = failures;
  out << j.dump(2) << "\n";
  return failures == 0 ? kOk : kError;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_trace(const Options& o, std::ostream& out) {
  ProblemFile p = load_problem(o.file);
  auto solver = backend_for(p, o);
  std::vector<TraceEntry> actual = trace_of(run_reduce(p, o, *solver));
  if (!o.write.empty()) {
    std::ofstream f(o.write);
    if (!f) throw Error("cannot write " + o.write);
    f << to_jsonl(actual);
  }
  if (o.golden.empty()) {
    if (o.write.empty()) out << to_jsonl(actual);
    return kOk;
  }
  std::vector<TraceEntry> expected = parse_trace(read_file(o.golden));
  std::vector<std::string> diff = diff_traces(expected, actual);
  if (diff.empty()) {
    out << "trace: match (" << actual.size() << " steps)\n";
    return kOk;
  }
  out << "trace: differs\n";
  for (const auto& d : diff) out << d << "\n";
  return kError;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Constrained rewriting on existentially constrained terms", "lctrs"};
  app.require_subcommand(1);
  // Global flags are accepted after the subcommand too.
  app.fallthrough();
  app.add_option("--smt-bin", o.smt_bin, "SMT solver binary");
  app.add_option("--smt-timeout-ms", o.smt_timeout_ms, "per-query SMT timeout");

  auto* rewrite = app.add_subcommand("rewrite", "reduce a term and print the frontier");
  auto* trace = app.add_subcommand("trace", "emit a JSON-lines trace, or replay it against a golden file");
  for (auto* sc : {rewrite, trace}) {
    sc->add_option("file", o.file, "problem file")->required();
    sc->add_option("term", o.query, "term identifier")->required();
    sc->add_option("--mode", o.mode, "mg or partial");
    sc->add_option("--fuel", o.fuel, "step bound per branch");
    sc->add_option("--strategy", o.strategy, "full or first");
    sc->add_option("--max-nodes", o.max_nodes, "node bound");
  }
  trace->add_option("--golden", o.golden, "golden trace to diff against");
  trace->add_option("--write", o.write, "write the trace to this file");

  auto* normal = app.add_subcommand("normal", "normal-form test");
  normal->add_option("file", o.file)->required();
  normal->add_option("term", o.query)->required();
  normal->add_option("--mode", o.mode, "mg or partial");

  auto* subsume = app.add_subcommand("subsume", "does the first term's interpretation lie in the second's");
  auto* equiv = app.add_subcommand("equiv", "equivalence of two terms");
  for (auto* sc : {subsume, equiv}) {
    sc->add_option("file", o.file)->required();
    sc->add_option("a", o.query)->required();
    sc->add_option("b", o.second)->required();
  }

  auto* interpret = app.add_subcommand("interpret", "enumerate an interpretation");
  interpret->add_option("file", o.file)->required();
  interpret->add_option("target", o.query, "term or rule identifier")->required();
  interpret->add_option("--kind", o.kind, "std, value or rule");
  interpret->add_option("--domain", o.domain, "mod:M or int:LO..HI");
  interpret->add_option("--pool", o.pool, "pool variables per sort");
  interpret->add_option("--cap", o.cap, "instance bound");

  auto* verify = app.add_subcommand("verify", "run the property checks");
  verify->add_option("--theorem", o.theorem, "check id or all");
  verify->add_option("--seed", o.seed);
  verify->add_option("--cases", o.cases);
  verify->add_option("--mod", o.modulus);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (rewrite->parsed()) return cmd_rewrite(o, out);
    if (trace->parsed()) return cmd_trace(o, out);
    if (normal->parsed()) return cmd_normal(o, out);
    if (subsume->parsed()) return cmd_compare(o, out, false);
    if (equiv->parsed()) return cmd_compare(o, out, true);
    if (interpret->parsed()) return cmd_interpret(o, out);
    if (verify->parsed()) return cmd_verify(o, out, err);
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kUsage;
}

}  // namespace lctrs::cli
