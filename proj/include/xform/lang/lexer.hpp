#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "xform/lang/ast.hpp"

namespace xform::lang {

enum class Tok {
  Int, Real, Str, Ident,
  // keywords
  Fn, Transform, Let, For, In, While, If, Else, Return, Break, Continue, True, False, And, Or, Not,
  // punctuation
  LParen, RParen, LBrace, RBrace, LBracket, RBracket, Comma, Colon, Semicolon, Assign,
  Plus, Minus, Star, Slash, SlashSlash, Percent, EqEq, NotEq, Lt, Le, Gt, Ge,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifier name or decoded string literal
  std::int64_t int_value = 0;
  double real_value = 0.0;
  Span span;
};

/// Throws SyntaxError, or ForbiddenConstruct for `import`, dunder names and attribute access.
std::vector<Token> tokenize(std::string_view source);

const char* describe(Tok kind) noexcept;

}  // namespace xform::lang
