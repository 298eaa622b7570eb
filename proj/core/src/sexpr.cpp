#include "lctrs/sexpr.hpp"

#include <cctype>

#include "lctrs/errors.hpp"

namespace lctrs {

std::string SExpr::str() const {
  if (atom) return text;
  std::string s = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += ' ';
    s += items[i].str();
  }
  return s + ")";
}

namespace {

void skip_space(std::string_view in, std::size_t& pos) {
  while (pos < in.size()) {
    if (std::isspace(static_cast<unsigned char>(in[pos]))) {
      ++pos;
    } else if (in[pos] == ';') {
      while (pos < in.size() && in[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
}

std::optional<SExpr> parse_at(std::string_view in, std::size_t& pos) {
  skip_space(in, pos);
  if (pos >= in.size()) return std::nullopt;
  SExpr e;
  char c = in[pos];
  if (c == ')') throw Error("unbalanced ')' in solver output");
  if (c == '(') {
    e.atom = false;
    ++pos;
    for (;;) {
      skip_space(in, pos);
      if (pos >= in.size()) return std::nullopt;
      if (in[pos] == ')') {
        ++pos;
        return e;
      }
      auto item = parse_at(in, pos);
      if (!item) return std::nullopt;
      e.items.push_back(std::move(*item));
    }
  }
  if (c == '|') {
    auto end = in.find('|', pos + 1);
    if (end == std::string_view::npos) return std::nullopt;
    e.text = std::string(in.substr(pos + 1, end - pos - 1));
    pos = end + 1;
    return e;
  }
  if (c == '"') {
    std::size_t i = pos + 1;
    for (;;) {
      if (i >= in.size()) return std::nullopt;
      if (in[i] == '"') {
        if (i + 1 < in.size() && in[i + 1] == '"') {
          i += 2;
          continue;
        }
        break;
      }
      ++i;
    }
    e.text = std::string(in.substr(pos, i + 1 - pos));
    pos = i + 1;
    return e;
  }
  std::size_t start = pos;
  while (pos < in.size() && !std::isspace(static_cast<unsigned char>(in[pos])) && in[pos] != '(' &&
         in[pos] != ')')
    ++pos;
  // A bare atom at the very end may still be growing.
  if (pos == in.size()) {
    pos = start;
    return std::nullopt;
  }
  e.text = std::string(in.substr(start, pos - start));
  return e;
}

}  // namespace

std::optional<SExpr> parse_sexpr(std::string_view in, std::size_t& pos) {
  std::size_t p = pos;
  auto e = parse_at(in, p);
  if (e) pos = p;
  return e;
}

}  // namespace lctrs
