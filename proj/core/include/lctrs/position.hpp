#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lctrs/term.hpp"

namespace lctrs {

/// Path of 1-indexed argument numbers; the empty path is the root.
using Position = std::vector<std::size_t>;

/// All positions of `t` in preorder (leftmost-outermost first).
std::vector<Position> positions(const Term& t);
bool valid_position(const Term& t, const Position& p);
const Term& subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& u);
std::string position_string(const Position& p);

}  // namespace lctrs
