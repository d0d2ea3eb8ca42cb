#include "xform/lang/lexer.hpp"

#include <charconv>
#include <cmath>
#include <unordered_map>

#include "xform/lang/diagnostics.hpp"
#include "xform/table/utf8.hpp"

namespace xform::lang {
namespace {

const std::unordered_map<std::string_view, Tok>& keywords() {
  static const std::unordered_map<std::string_view, Tok> kw = {
      {"fn", Tok::Fn},         {"transform", Tok::Transform}, {"let", Tok::Let},       {"for", Tok::For},
      {"in", Tok::In},         {"while", Tok::While},         {"if", Tok::If},         {"else", Tok::Else},
      {"return", Tok::Return}, {"break", Tok::Break},         {"continue", Tok::Continue},
      {"true", Tok::True},     {"false", Tok::False},         {"and", Tok::And},       {"or", Tok::Or},
      {"not", Tok::Not},
  };
  return kw;
}

bool is_ident_start(char c) noexcept { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_ident_char(char c) noexcept { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.span = here();
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      lex_one(t);
      t.span.end = pos_;
      out.push_back(std::move(t));
    }
  }

 private:
  Span here() const { return Span{pos_, pos_, line_, col_}; }

  [[noreturn]] void fail(ErrorCode code, const std::string& msg, Span at) const { throw LangError(code, msg, at); }

  char peek(std::size_t ahead = 0) const { return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0'; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  void lex_one(Token& t) {
    const char c = peek();
    if (is_digit(c)) return lex_number(t);
    if (is_ident_start(c)) return lex_ident(t);
    if (c == '"') return lex_string(t);
    const Span at = here();
    auto single = [&](Tok k) {
      advance();
      t.kind = k;
    };
    auto pair = [&](char second, Tok two, Tok one) {
      advance();
      if (peek() == second) {
        advance();
        t.kind = two;
      } else {
        t.kind = one;
      }
    };
    switch (c) {
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '{': return single(Tok::LBrace);
      case '}': return single(Tok::RBrace);
      case '[': return single(Tok::LBracket);
      case ']': return single(Tok::RBracket);
      case ',': return single(Tok::Comma);
      case ':': return single(Tok::Colon);
      case ';': return single(Tok::Semicolon);
      case '+': return single(Tok::Plus);
      case '-': return single(Tok::Minus);
      case '*': return single(Tok::Star);
      case '%': return single(Tok::Percent);
      case '/': return pair('/', Tok::SlashSlash, Tok::Slash);
      case '=': return pair('=', Tok::EqEq, Tok::Assign);
      case '<': return pair('=', Tok::Le, Tok::Lt);
      case '>': return pair('=', Tok::Ge, Tok::Gt);
      case '!':
        advance();
        if (peek() == '=') {
          advance();
          t.kind = Tok::NotEq;
          return;
        }
        fail(ErrorCode::SyntaxError, "use 'not' for negation", at);
      case '.':
        fail(ErrorCode::ForbiddenConstruct, "attribute access is not part of the language", at);
      default:
        fail(ErrorCode::SyntaxError, std::string("unexpected character '") + c + "'", at);
    }
  }

  void lex_number(Token& t) {
    const Span at = here();
    const std::size_t start = pos_;
    bool is_real = false;
    while (is_digit(peek())) advance();
    if (peek() == '.' && is_digit(peek(1))) {
      is_real = true;
      advance();
      while (is_digit(peek())) advance();
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (is_digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && is_digit(peek(2))))) {
      is_real = true;
      advance();
      if (peek() == '+' || peek() == '-') advance();
      while (is_digit(peek())) advance();
    }
    if (is_ident_char(peek())) fail(ErrorCode::SyntaxError, "malformed number", at);
    const std::string_view lit = src_.substr(start, pos_ - start);
    if (is_real) {
      double v = 0.0;
      const auto r = std::from_chars(lit.data(), lit.data() + lit.size(), v);
      if (r.ec != std::errc{} || !std::isfinite(v)) fail(ErrorCode::SyntaxError, "real literal out of range", at);
      t.kind = Tok::Real;
      t.real_value = v;
    } else {
      std::int64_t v = 0;
      const auto r = std::from_chars(lit.data(), lit.data() + lit.size(), v);
      if (r.ec != std::errc{}) fail(ErrorCode::SyntaxError, "integer literal out of 64-bit range", at);
      t.kind = Tok::Int;
      t.int_value = v;
    }
    t.text = std::string(lit);
  }

  void lex_ident(Token& t) {
    const Span at = here();
    const std::size_t start = pos_;
    while (is_ident_char(peek())) advance();
    const std::string_view word = src_.substr(start, pos_ - start);
    if (word == "import" || word == "exec" || word == "eval" || word.starts_with("__")) {
      fail(ErrorCode::ForbiddenConstruct, "'" + std::string(word) + "' is not available in the sandbox", at);
    }
    if (auto it = keywords().find(word); it != keywords().end()) {
      t.kind = it->second;
    } else {
      t.kind = Tok::Ident;
    }
    t.text = std::string(word);
  }

  void lex_string(Token& t) {
    const Span at = here();
    advance();  // opening quote
    std::string value;
    for (;;) {
      if (pos_ >= src_.size()) fail(ErrorCode::SyntaxError, "unterminated string literal", at);
      const char c = peek();
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\n') fail(ErrorCode::SyntaxError, "newline in string literal", at);
      if (c != '\\') {
        value.push_back(c);
        advance();
        continue;
      }
      const Span esc = here();
      advance();
      const char e = peek();
      if (pos_ >= src_.size()) fail(ErrorCode::SyntaxError, "unterminated string literal", at);
      advance();
      switch (e) {
        case 'n': value.push_back('\n'); break;
        case 't': value.push_back('\t'); break;
        case 'r': value.push_back('\r'); break;
        case '\\': value.push_back('\\'); break;
        case '"': value.push_back('"'); break;
        case 'u': {
          if (peek() != '{') fail(ErrorCode::SyntaxError, "expected '{' after \\u", esc);
          advance();
          std::uint32_t cp = 0;
          int digits = 0;
          while (peek() != '}') {
            const char h = peek();
            int v = -1;
            if (h >= '0' && h <= '9') v = h - '0';
            if (h >= 'a' && h <= 'f') v = h - 'a' + 10;
            if (h >= 'A' && h <= 'F') v = h - 'A' + 10;
            if (v < 0 || ++digits > 6) fail(ErrorCode::SyntaxError, "bad \\u{...} escape", esc);
            cp = cp * 16 + static_cast<std::uint32_t>(v);
            advance();
          }
          advance();
          if (digits == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            fail(ErrorCode::SyntaxError, "escape is not a Unicode scalar value", esc);
          }
          utf8::append(value, static_cast<char32_t>(cp));
          break;
        }
        default: fail(ErrorCode::SyntaxError, std::string("unknown escape \\") + e, esc);
      }
    }
    if (!utf8::is_valid(value)) fail(ErrorCode::SyntaxError, "string literal is not valid UTF-8", at);
    t.kind = Tok::Str;
    t.text = std::move(value);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

const char* describe(Tok kind) noexcept {
  switch (kind) {
    case Tok::Int: return "integer";
    case Tok::Real: return "real";
    case Tok::Str: return "string";
    case Tok::Ident: return "name";
    case Tok::Fn: return "'fn'";
    case Tok::Transform: return "'transform'";
    case Tok::Let: return "'let'";
    case Tok::For: return "'for'";
    case Tok::In: return "'in'";
    case Tok::While: return "'while'";
    case Tok::If: return "'if'";
    case Tok::Else: return "'else'";
    case Tok::Return: return "'return'";
    case Tok::Break: return "'break'";
    case Tok::Continue: return "'continue'";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::And: return "'and'";
    case Tok::Or: return "'or'";
    case Tok::Not: return "'not'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Semicolon: return "';'";
    case Tok::Assign: return "'='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::SlashSlash: return "'//'";
    case Tok::Percent: return "'%'";
    case Tok::EqEq: return "'=='";
    case Tok::NotEq: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::End: return "end of input";
  }
  return "token";
}

}  // namespace xform::lang
