#include <sstream>

#include "doctest.h"
#include "lctrs/smt_solver.hpp"
#include "lctrs_cli/cli.hpp"
#include "json.hpp"

using namespace lctrs::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string problem(const std::string& name) { return std::string(LCTRS_PROBLEMS_DIR) + "/" + name; }

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

}  // namespace

TEST_CASE("rewrite prints the partial normal forms") {
  Run r = run({"rewrite", problem("sum.lctrs"), "start", "--mode", "partial", "--fuel", "40"});
  CHECK(r.code == kOk);
  CHECK(has_line(r.out, "normal forms: 1 3 6 10 15"));
}

TEST_CASE("rewrite in mg mode stops at one frontier term") {
  Run r = run({"rewrite", problem("sum.lctrs"), "start", "--mode", "mg", "--fuel", "10"});
  CHECK(r.code == kOk);
  CHECK(r.out.find("[normal] Π{x, y}. x + sum(y)") != std::string::npos);
  CHECK(has_line(r.out, "normal forms:"));
}

TEST_CASE("fuel exhaustion is an undecided result") {
  Run r = run({"rewrite", problem("sum.lctrs"), "start", "--mode", "partial", "--fuel", "2"});
  CHECK(r.code == kUnknown);
  CHECK(r.out.find("fuel-exhausted") != std::string::npos);
}

TEST_CASE("normal") {
  CHECK(run({"normal", problem("sum.lctrs"), "small", "--mode", "mg"}).out == "normal: yes\n");
  Run r = run({"normal", problem("sum.lctrs"), "pair", "--mode", "partial"});
  CHECK(r.code == kOk);
  CHECK(r.out.rfind("normal: no", 0) == 0);
}

TEST_CASE("equiv and subsume") {
  Run r = run({"equiv", problem("pairs.lctrs"), "lhs", "rhs"});
  CHECK(r.code == kOk);
  CHECK(has_line(r.out, "equivalent: yes"));
  CHECK(has_line(run({"equiv", problem("pairs.lctrs"), "open", "half"}).out, "equivalent: no"));
  CHECK(has_line(run({"subsume", problem("pairs.lctrs"), "vals", "any"}).out, "subsumes: yes"));
  r = run({"subsume", problem("pairs.lctrs"), "any", "vals"});
  CHECK(has_line(r.out, "subsumes: no"));
  CHECK(has_line(r.out, "witness: u(x)"));
  CHECK(has_line(run({"equiv", problem("sum.lctrs"), "stuck", "stuck"}).out, "equivalent: yes"));
}

TEST_CASE("interpret") {
  Run r = run({"interpret", problem("pairs.lctrs"), "even", "--kind", "std", "--pool", "1"});
  CHECK(r.code == kOk);
  CHECK(r.out == "f(0, z1)\nf(2, z1)\nf(4, z1)\ncount: 3\n");
  r = run({"interpret", problem("pairs.lctrs"), "even", "--kind", "value"});
  CHECK(r.out == "f(0, v1)\nf(2, v1)\nf(4, v1)\ncount: 3\n");
  r = run({"interpret", problem("pairs.lctrs"), "drop", "--kind", "rule", "--domain", "int:-3..3"});
  CHECK(r.code == kUnknown);
  CHECK(has_line(r.out, "f(-3, y) -> y"));
  CHECK(has_line(r.out, "count: 4"));
  r = run({"interpret", problem("pairs.lctrs"), "vals", "--kind", "value", "--domain", "mod:2"});
  CHECK(r.out == "u(0)\nu(1)\ncount: 2\n");
}

TEST_CASE("trace replays the golden files") {
  Run r = run({"trace", problem("sum.lctrs"), "start", "--mode", "partial", "--golden", problem("sum.start.partial.jsonl")});
  CHECK(r.code == kOk);
  CHECK(r.out.rfind("trace: match", 0) == 0);
  r = run({"trace", problem("sum.lctrs"), "start", "--mode", "mg", "--golden", problem("sum.start.partial.jsonl")});
  CHECK(r.code == kError);
  CHECK(r.out.rfind("trace: differs", 0) == 0);
  r = run({"trace", problem("sum.lctrs"), "split", "--mode", "partial"});
  CHECK(r.out.rfind("{\"mode\":\"partial\",\"rule\":\"rule1\"", 0) == 0);
}

TEST_CASE("verify reports JSON") {
  Run r = run({"verify", "--theorem", "T-3.2", "--seed", "42", "--cases", "20", "--mod", "5"});
  CHECK(r.code == kOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["failures"] == 0);
  CHECK(j["reports"].size() == 1);
  CHECK(j["reports"][0]["theorem"] == "T-3.2");
  CHECK(j["reports"][0]["cases"] == 20);
}

TEST_CASE("output is deterministic") {
  std::vector<std::string> args{"rewrite", problem("sum.lctrs"), "split", "--mode", "partial"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("usage and input errors") {
  CHECK(run({}).code == kUsage);
  CHECK(run({"frobnicate"}).code == kUsage);
  CHECK(run({"rewrite", problem("sum.lctrs"), "start", "--mode", "sideways"}).code == kUsage);
  CHECK(run({"rewrite", problem("sum.lctrs"), "start", "--fuel", "many"}).code == kUsage);
  CHECK(run({"interpret", problem("pairs.lctrs"), "even", "--domain", "mod"}).code == kUsage);
  Run r = run({"rewrite", problem("missing.lctrs"), "start"});
  CHECK(r.code == kError);
  CHECK_FALSE(r.err.empty());
  CHECK(run({"rewrite", problem("sum.lctrs"), "nope"}).code == kError);
  CHECK(run({"verify", "--theorem", "T-0.0"}).code == kUsage);
}

TEST_CASE("the integer problem through the SMT backend") {
  if (!lctrs::SmtBackend::available()) {
    MESSAGE("z3 not found; skipping");
    return;
  }
  Run r = run({"rewrite", problem("sum_int.lctrs"), "start", "--mode", "partial"});
  CHECK(r.code == kOk);
  CHECK(has_line(r.out, "normal forms: 1 3 6 10 15"));
  CHECK(run({"rewrite", problem("sum_int.lctrs"), "start", "--smt-bin", "/nonexistent/z3"}).code == kError);
}
