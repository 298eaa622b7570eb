#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lctrs/enum_solver.hpp"
#include "lctrs/errors.hpp"
#include "lctrs/harness.hpp"
#include "support.hpp"

using namespace lctrs;

namespace {

std::string snapshot(const LCTRS& sys) {
  std::string out;
  for (const auto& r : sys.rules) out += show(r) + "\n";
  return out;
}

/// Compares against a file in the golden directory; LCTRS_UPDATE_GOLDEN rewrites it.
void check_golden(const std::string& name, const std::string& got) {
  std::string path = std::string(LCTRS_GOLDEN_DIR) + "/" + name;
  if (std::getenv("LCTRS_UPDATE_GOLDEN")) {
    std::ofstream(path) << got;
    return;
  }
  std::ifstream in(path);
  REQUIRE_MESSAGE(in, "missing golden file " << path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == got);
}

GenConfig seeded(std::uint64_t seed) {
  GenConfig cfg;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("gen_system is deterministic per seed") {
  GenConfig cfg = seeded(1);
  Rng a(1), b(1);
  LCTRS s1 = gen_system(cfg, a);
  LCTRS s2 = gen_system(cfg, b);
  CHECK(snapshot(s1) == snapshot(s2));
  check_golden("gen_system_seed1.txt", snapshot(s1));
}

TEST_CASE("generated systems respect the bounds") {
  GenConfig cfg;
  cfg.max_rules = 2;
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    LCTRS s = gen_system(cfg, rng);
    CHECK(s.user_rules().size() <= 2);
    CHECK(s.validate().empty());
    for (const auto& r : s.user_rules()) {
      RuleCheck c = validate_rule(r);
      CHECK(c.left_linear);
      CHECK(c.left_value_free);
    }
  }
}

TEST_CASE("generated terms are well-formed and satisfiable") {
  GenConfig cfg;
  Rng rng(9);
  const GenSignature& sig = GenSignature::standard();
  EnumerationBackend e(cfg.model);
  for (int i = 0; i < 50; ++i) {
    LCTRS s = gen_system(cfg, rng);
    ECTerm c = gen_ect(cfg, rng, s, sig.all());
    CHECK(well_formed(c).ok);
    CHECK(is_sat_ect(c, e).sat());
    CHECK(c.term.depth() <= cfg.max_term_depth + 1);
  }
}

TEST_CASE("gen_ect over an empty signature is exhausted") {
  GenConfig cfg;
  Rng rng(3);
  CHECK_THROWS_AS(gen_ect(cfg, rng, LCTRS{}, {}), GenerationExhausted);
}

TEST_CASE("the catalogue has sixteen checks") {
  CHECK(theorem_ids().size() == 16);
  CHECK_THROWS_AS(check("T-9.9", GenConfig{}, 1), ConfigError);
}

TEST_CASE("universal checks need an exact theory") {
  GenConfig cfg;
  cfg.model = TheoryModel::integers();
  CHECK_THROWS_AS(check("T-6.7", cfg, 1), ConfigError);
}

TEST_CASE("most general steps are partial steps on a fixed seed") {
  CheckReport r = check("T-3.5", seeded(7), 500);
  CHECK(r.cases_run == 500);
  CHECK(r.failures.empty());
  CHECK(r.nonvacuous > 0);
}

TEST_CASE("reports are reproducible") {
  CheckReport a = check("T-4.8", seeded(11), 60);
  CheckReport b = check("T-4.8", seeded(11), 60);
  CHECK(a.to_json() == b.to_json());
  CHECK(make_case("T-4.8", seeded(11), 3).describe() == make_case("T-4.8", seeded(11), 3).describe());
}

TEST_CASE("steps are absent under unsatisfiable guards") {
  Bundle b = make_case("T-4.8", seeded(2), 0);
  for (auto& r : b.system.rules)
    if (!r.calculation) r.guard = th::lt(th::int_val(1), th::int_val(0));
  CaseOutcome o = run_case(b);
  CHECK_FALSE(o.failed);
}

TEST_CASE("the instantiation-normal witness") {
  WitnessResult w = instantiation_normal_witness();
  CHECK(w.partial_normal);
  CHECK_FALSE(w.instantiation_normal);
  REQUIRE(w.reducible_instance);
  CHECK(show(*w.reducible_instance) == "f(a)");
  CheckReport r = check("T-6.9", GenConfig{}, 50);
  CHECK(r.failures.empty());
  CHECK_FALSE(r.notes.empty());
}

TEST_CASE("minimize keeps the theorem and reaches a fixpoint") {
  Bundle b = make_case("T-4.8", seeded(4), 0);
  while (b.system.user_rules().size() < 5) {
    Bundle more = make_case("T-4.8", seeded(4), b.system.rules.size() + 17);
    for (const auto& r : more.system.user_rules()) {
      ConstrainedRule copy = r;
      copy.id = "extra" + std::to_string(b.system.rules.size());
      b.system.rules.insert(b.system.rules.begin(), copy);
    }
  }
  REQUIRE(b.system.user_rules().size() >= 5);
  std::string keep = b.system.user_rules().back().id;
  auto pred = [&](const Bundle& x) { return x.system.find(keep) != nullptr; };
  Bundle m = minimize(b, pred);
  CHECK(m.theorem == b.theorem);
  CHECK(pred(m));
  CHECK(m.system.user_rules().size() <= 2);
  Bundle again = minimize(m, pred);
  CHECK(again.describe() == m.describe());
}
