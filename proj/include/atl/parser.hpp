#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "atl/errors.hpp"
#include "atl/formula.hpp"

namespace atl {

enum class token_kind {
  coalition_open,
  coalition_close,
  next_op,        // @
  always_op,      // #
  eventually_op,  // ~
  until_kw,       // U
  imply,          // => or =
  or_kw,
  and_kw,
  not_kw,
  true_kw,
  false_kw,
  lparen,
  rparen,
  comma,
  atom,
  end,
};

struct token {
  token_kind kind;
  std::string lexeme;
  std::size_t offset;
};

/// Splits formula text into tokens; a trailing `end` token marks EOF.
/// Atoms are maximal runs of [A-Za-z0-9_] that are not keywords.
inline std::vector<token> tokenize(std::string_view text) {
  std::vector<token> out;
  std::size_t i = 0;
  auto word_char = [](unsigned char c) { return std::isalnum(c) || c == '_'; };
  while (i < text.size()) {
    unsigned char c = text[i];
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (word_char(c)) {
      while (i < text.size() && word_char(static_cast<unsigned char>(text[i])))
        ++i;
      std::string word(text.substr(start, i - start));
      token_kind kind = token_kind::atom;
      if (word == "true")
        kind = token_kind::true_kw;
      else if (word == "false")
        kind = token_kind::false_kw;
      else if (word == "not")
        kind = token_kind::not_kw;
      else if (word == "and")
        kind = token_kind::and_kw;
      else if (word == "or")
        kind = token_kind::or_kw;
      else if (word == "U")
        kind = token_kind::until_kw;
      out.push_back({kind, std::move(word), start});
      continue;
    }
    switch (c) {
      case '<':
        if (i + 1 < text.size() && text[i + 1] == '<') {
          out.push_back({token_kind::coalition_open, "<<", start});
          i += 2;
          continue;
        }
        break;
      case '>':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({token_kind::coalition_close, ">>", start});
          i += 2;
          continue;
        }
        break;
      case '=':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({token_kind::imply, "=>", start});
          i += 2;
        } else {
          out.push_back({token_kind::imply, "=", start});
          ++i;
        }
        continue;
      case '@':
        out.push_back({token_kind::next_op, "@", start});
        ++i;
        continue;
      case '#':
        out.push_back({token_kind::always_op, "#", start});
        ++i;
        continue;
      case '~':
        out.push_back({token_kind::eventually_op, "~", start});
        ++i;
        continue;
      case '(':
        out.push_back({token_kind::lparen, "(", start});
        ++i;
        continue;
      case ')':
        out.push_back({token_kind::rparen, ")", start});
        ++i;
        continue;
      case ',':
        out.push_back({token_kind::comma, ",", start});
        ++i;
        continue;
      default:
        break;
    }
    throw parse_error(start, "unexpected character '" + std::string(1, text[start]) + "'");
  }
  out.push_back({token_kind::end, "", text.size()});
  return out;
}

namespace detail {

// Recursive descent over the token stream. Precedence, loosest first:
// => (left fold), or, and, not; @/#/~/U bind a full implication expression.
class formula_parser {
public:
  explicit formula_parser(const std::vector<token>& tokens) : tokens_(tokens) {}

  formula parse() {
    formula f = parse_atl();
    if (peek().kind != token_kind::end)
      throw parse_error(peek().offset, "unexpected trailing input '" + peek().lexeme + "'");
    return f;
  }

private:
  static constexpr int max_depth = 10000;

  const token& peek() const { return tokens_[pos_]; }

  const token& advance() { return tokens_[pos_++]; }

  bool accept(token_kind kind) {
    if (peek().kind != kind)
      return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    std::string got = peek().kind == token_kind::end ? "end of input" : "'" + peek().lexeme + "'";
    throw parse_error(peek().offset, "expected " + expected + ", found " + got);
  }

  void enter() {
    if (++depth_ > max_depth)
      throw parse_error(peek().offset, "formula nesting exceeds the depth limit of 10000");
  }

  void leave() { --depth_; }

  formula parse_atl() {
    if (peek().kind != token_kind::coalition_open)
      return parse_impl();
    std::vector<std::string> members = parse_coalition();
    if (accept(token_kind::next_op))
      return formula::next(std::move(members), parse_impl());
    if (accept(token_kind::always_op))
      return formula::always(std::move(members), parse_impl());
    if (accept(token_kind::eventually_op))
      return formula::eventually(std::move(members), parse_impl());
    formula lhs = parse_impl();
    if (!accept(token_kind::until_kw))
      fail("'U'");
    formula rhs = parse_impl();
    return formula::until(std::move(members), std::move(lhs), std::move(rhs));
  }

  std::vector<std::string> parse_coalition() {
    advance();  // <<
    std::vector<std::string> members;
    if (accept(token_kind::coalition_close))
      return members;
    members.push_back(parse_player_name());
    while (accept(token_kind::comma))
      members.push_back(parse_player_name());
    if (!accept(token_kind::coalition_close))
      fail("',' or '>>' in coalition");
    return members;
  }

  std::string parse_player_name() {
    if (peek().kind != token_kind::atom)
      fail("player name in coalition");
    return advance().lexeme;
  }

  formula parse_impl() {
    formula lhs = parse_or();
    while (accept(token_kind::imply))
      lhs = formula::implication(std::move(lhs), parse_or());
    return lhs;
  }

  formula parse_or() {
    formula lhs = parse_and();
    while (accept(token_kind::or_kw))
      lhs = formula::disjunction(std::move(lhs), parse_and());
    return lhs;
  }

  formula parse_and() {
    formula lhs = parse_not();
    while (accept(token_kind::and_kw))
      lhs = formula::conjunction(std::move(lhs), parse_not());
    return lhs;
  }

  formula parse_not() {
    if (accept(token_kind::not_kw)) {
      enter();
      formula f = formula::negation(parse_not());
      leave();
      return f;
    }
    return parse_atom();
  }

  formula parse_atom() {
    switch (peek().kind) {
      case token_kind::lparen: {
        advance();
        enter();
        formula f = parse_atl();
        leave();
        if (!accept(token_kind::rparen))
          fail("')'");
        return f;
      }
      case token_kind::true_kw:
        advance();
        return formula::constant(true);
      case token_kind::false_kw:
        advance();
        return formula::constant(false);
      case token_kind::atom:
        return formula::atom(advance().lexeme);
      default:
        fail("a formula");
    }
  }

  const std::vector<token>& tokens_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace detail

/// Parses the concrete formula syntax. Throws parse_error with the byte
/// offset of the first offending token.
inline formula parse_formula(std::string_view text) {
  std::vector<token> tokens = tokenize(text);
  detail::formula_parser p(tokens);
  return p.parse();
}

}  // namespace atl
