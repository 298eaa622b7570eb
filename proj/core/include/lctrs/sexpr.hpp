#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lctrs {

struct SExpr {
  bool atom = true;
  std::string text;  // atom contents, with |quotes| removed
  std::vector<SExpr> items;

  std::string str() const;
};

/// Parses one S-expression starting at `pos`, skipping leading whitespace.
/// Returns nullopt when the input ends before the expression does; `pos` is
/// advanced only on success. Throws Error on malformed input.
std::optional<SExpr> parse_sexpr(std::string_view in, std::size_t& pos);

}  // namespace lctrs
