#pragma once

#include <stdexcept>
#include <string>

namespace lctrs {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidPosition : Error {
  using Error::Error;
};
struct SortMismatch : Error {
  using Error::Error;
};
struct NonLinearPattern : Error {
  using Error::Error;
};
struct NonTheoryTerm : Error {
  using Error::Error;
};
struct NotValued : Error {
  using Error::Error;
};
struct BackendFailure : Error {
  using Error::Error;
};
struct UnsatisfiableInput : Error {
  using Error::Error;
};
struct CapExceeded : Error {
  using Error::Error;
};
struct GenerationExhausted : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  ValidationError(std::string object_id, const std::string& what)
      : Error(object_id + ": " + what), id(std::move(object_id)) {}
  std::string id;
};

struct ParseError : Error {
  ParseError(int line_no, int col_no, std::string exp)
      : Error("line " + std::to_string(line_no) + ", column " +
              std::to_string(col_no) + ": expected " + exp),
        line(line_no),
        col(col_no),
        expected(std::move(exp)) {}
  int line;
  int col;
  std::string expected;
};

}  // namespace lctrs
