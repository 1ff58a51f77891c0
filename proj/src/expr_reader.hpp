#pragma once

// Token reader shared by the integrand parser and the scale-spec parser.

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tscale/error.hpp"
#include "tscale/expr.hpp"

namespace tscale::detail {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, Equals, End };

struct Token {
  Tok kind = Tok::End;
  std::string_view text;
  double number = 0.0;
  std::size_t column = 1;  // 1-based
};

std::string_view tok_name(Tok kind);

class Reader {
 public:
  explicit Reader(std::string_view text);

  const Token& peek() const { return tokens_[pos_]; }
  /// Token k positions ahead (clamped to the end token).
  const Token& peek_at(std::size_t k) const {
    return tokens_[std::min(pos_ + k, tokens_.size() - 1)];
  }
  const Token& next();
  bool accept(Tok kind);
  const Token& expect(Tok kind);
  bool at_end() const { return peek().kind == Tok::End; }

  [[noreturn]] void fail(const Token& at, std::vector<std::string> expected,
                         const std::string& what) const;

  /// Parses one arithmetic expression, appending nodes in post-order.
  /// Returns the index of the root node. Stops before `,` `)` `=` or end.
  std::int32_t expression(std::vector<ExprNode>& nodes);

 private:
  std::int32_t sum(std::vector<ExprNode>& nodes);
  std::int32_t product(std::vector<ExprNode>& nodes);
  std::int32_t unary(std::vector<ExprNode>& nodes);
  std::int32_t power(std::vector<ExprNode>& nodes);
  std::int32_t primary(std::vector<ExprNode>& nodes);

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

/// Reads an expression that must not depend on `s` and folds it to a value.
double read_constant(Reader& reader);

}  // namespace tscale::detail
