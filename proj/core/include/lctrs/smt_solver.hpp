#pragma once

#include <string>
#include <sys/types.h>

#include "lctrs/solver.hpp"

namespace lctrs {

struct SmtOptions {
  std::string binary = "z3";
  int timeout_ms = 5000;
};

/// SMT-LIB2 client over a persistent child process. One handle owns one
/// process; calls must be serialized.
class SmtBackend : public Solver {
 public:
  explicit SmtBackend(SmtOptions opts = {});
  ~SmtBackend() override;
  SmtBackend(const SmtBackend&) = delete;
  SmtBackend& operator=(const SmtBackend&) = delete;

  const TheoryModel& model() const override { return model_; }
  bool exact() const override { return false; }
  std::string name() const override { return "smt[" + opts_.binary + "]"; }
  SolverVerdict check_sat(const ExistentialConstraint& ec) override;
  SolverVerdict check_valid_implication(const ExistentialConstraint& lhs,
                                        const ExistentialConstraint& rhs) override;

  /// True when the binary can be started and answers a trivial query.
  static bool available(const SmtOptions& opts = {});
  /// SMT-LIB rendering of a constraint term.
  static std::string to_smt(const Term& t);

 private:
  void start();
  void stop();
  void send(const std::string& text);
  std::string read_response();
  SolverVerdict run(const std::vector<Var>& free, const std::string& assertion, bool validity, bool nia);

  SmtOptions opts_;
  TheoryModel model_ = TheoryModel::integers();
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

}  // namespace lctrs
