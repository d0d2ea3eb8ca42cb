#include "xform/lang/parser.hpp"

#include <array>

#include "xform/lang/diagnostics.hpp"
#include "xform/lang/lexer.hpp"

namespace xform::lang {

bool is_forbidden_call(std::string_view name) noexcept {
  static constexpr std::array<std::string_view, 30> kForbidden = {
      "open",   "system", "popen",   "spawn",  "fork",    "os",      "sys",    "subprocess", "env",   "getenv",
      "setenv", "environ", "file",   "fopen",  "read",    "write",   "print",  "println",    "input", "socket",
      "connect", "fetch",  "request", "time",  "clock",   "now",     "random", "rand",       "sleep", "require"};
  for (auto f : kForbidden) {
    if (f == name) return true;
  }
  return false;
}

namespace {

constexpr int kMaxNesting = 200;

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Ast program() {
    Ast ast;
    if (at(Tok::Fn) || at(Tok::Transform)) {
      while (at(Tok::Fn)) ast.functions.push_back(funcdef());
      expect(Tok::Transform, "'transform'");
      expect(Tok::LParen, "'('");
      const Token& param = expect(Tok::Ident, "parameter 'x'");
      if (param.text != "x") fail("the transform parameter must be named 'x'", param.span);
      expect(Tok::RParen, "')'");
      ast.body = block();
    } else {
      const Span start = cur().span;
      ast.body.tail = expr();
      ast.body.span = start;
    }
    if (!at(Tok::End)) fail(std::string("unexpected ") + describe(cur().kind) + " after program", cur().span);
    return ast;
  }

 private:
  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p_(p) {
      if (++p_.depth_ > kMaxNesting) p_.fail("program nests too deeply", p_.cur().span);
    }
    ~DepthGuard() { --p_.depth_; }
    Parser& p_;
  };

  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool accept(Tok k) {
    if (!at(k)) return false;
    take();
    return true;
  }

  const Token& expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what + ", found " + describe(cur().kind), cur().span);
    return take();
  }

  [[noreturn]] void fail(const std::string& msg, Span at) const { throw LangError(ErrorCode::SyntaxError, msg, at); }

  FuncDef funcdef() {
    FuncDef f;
    f.span = expect(Tok::Fn, "'fn'").span;
    f.name = expect(Tok::Ident, "function name").text;
    expect(Tok::LParen, "'('");
    if (!at(Tok::RParen)) {
      do {
        f.params.push_back(expect(Tok::Ident, "parameter name").text);
      } while (accept(Tok::Comma));
    }
    expect(Tok::RParen, "')'");
    f.body = block();
    return f;
  }

  Block block() {
    DepthGuard guard(*this);
    Block b;
    b.span = expect(Tok::LBrace, "'{'").span;
    while (!at(Tok::RBrace)) {
      if (accept(Tok::Semicolon)) continue;
      if (at(Tok::End)) fail("unterminated block", b.span);
      b.stmts.push_back(stmt());
    }
    take();
    if (!b.stmts.empty() && b.stmts.back().kind == StmtKind::Expr) {
      b.tail = b.stmts.back().expr;
      b.stmts.pop_back();
    }
    return b;
  }

  std::shared_ptr<const Block> block_ptr() { return std::make_shared<const Block>(block()); }

  Stmt stmt() {
    Stmt s;
    s.span = cur().span;
    switch (cur().kind) {
      case Tok::Let:
        take();
        s.kind = StmtKind::Let;
        s.name = expect(Tok::Ident, "name after 'let'").text;
        expect(Tok::Assign, "'='");
        s.expr = expr();
        return s;
      case Tok::For:
        take();
        s.kind = StmtKind::For;
        s.name = expect(Tok::Ident, "loop variable").text;
        expect(Tok::In, "'in'");
        s.expr = expr();
        s.body = block_ptr();
        return s;
      case Tok::While:
        take();
        s.kind = StmtKind::While;
        s.expr = expr();
        s.body = block_ptr();
        return s;
      case Tok::Return:
        take();
        s.kind = StmtKind::Return;
        s.expr = expr();
        return s;
      case Tok::Break:
        take();
        s.kind = StmtKind::Break;
        return s;
      case Tok::Continue:
        take();
        s.kind = StmtKind::Continue;
        return s;
      case Tok::Ident:
        if (toks_[pos_ + 1].kind == Tok::Assign) {
          s.kind = StmtKind::Assign;
          s.name = take().text;
          take();
          s.expr = expr();
          return s;
        }
        [[fallthrough]];
      default:
        s.kind = StmtKind::Expr;
        s.expr = expr();
        return s;
    }
  }

  static ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

  ExprPtr binary(BinaryOp op, ExprPtr l, ExprPtr r, Span span) {
    Expr e;
    e.kind = ExprKind::Binary;
    e.binary_op = op;
    e.span = span;
    e.args = {std::move(l), std::move(r)};
    return make(std::move(e));
  }

  ExprPtr expr() {
    DepthGuard guard(*this);
    return or_expr();
  }

  ExprPtr or_expr() {
    auto l = and_expr();
    while (at(Tok::Or)) {
      const Span s = take().span;
      l = binary(BinaryOp::Or, l, and_expr(), s);
    }
    return l;
  }

  ExprPtr and_expr() {
    auto l = not_expr();
    while (at(Tok::And)) {
      const Span s = take().span;
      l = binary(BinaryOp::And, l, not_expr(), s);
    }
    return l;
  }

  ExprPtr not_expr() {
    if (at(Tok::Not)) {
      DepthGuard guard(*this);
      Expr e;
      e.kind = ExprKind::Unary;
      e.unary_op = UnaryOp::Not;
      e.span = take().span;
      e.args = {not_expr()};
      return make(std::move(e));
    }
    return comparison();
  }

  static std::optional<BinaryOp> comparison_op(Tok k) {
    switch (k) {
      case Tok::EqEq: return BinaryOp::Eq;
      case Tok::NotEq: return BinaryOp::Ne;
      case Tok::Lt: return BinaryOp::Lt;
      case Tok::Le: return BinaryOp::Le;
      case Tok::Gt: return BinaryOp::Gt;
      case Tok::Ge: return BinaryOp::Ge;
      default: return std::nullopt;
    }
  }

  ExprPtr comparison() {
    auto l = sum();
    if (auto op = comparison_op(cur().kind)) {
      const Span s = take().span;
      l = binary(*op, l, sum(), s);
      if (comparison_op(cur().kind)) fail("comparisons do not chain; combine them with 'and'", cur().span);
    }
    return l;
  }

  ExprPtr sum() {
    auto l = product();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const auto op = at(Tok::Plus) ? BinaryOp::Add : BinaryOp::Sub;
      const Span s = take().span;
      l = binary(op, l, product(), s);
    }
    return l;
  }

  ExprPtr product() {
    auto l = unary();
    for (;;) {
      BinaryOp op;
      if (at(Tok::Star)) {
        op = BinaryOp::Mul;
      } else if (at(Tok::Slash)) {
        op = BinaryOp::Div;
      } else if (at(Tok::SlashSlash)) {
        op = BinaryOp::FloorDiv;
      } else if (at(Tok::Percent)) {
        op = BinaryOp::Mod;
      } else {
        return l;
      }
      const Span s = take().span;
      l = binary(op, l, unary(), s);
    }
  }

  ExprPtr unary() {
    if (at(Tok::Minus)) {
      DepthGuard guard(*this);
      Expr e;
      e.kind = ExprKind::Unary;
      e.unary_op = UnaryOp::Neg;
      e.span = take().span;
      e.args = {unary()};
      return make(std::move(e));
    }
    return postfix();
  }

  ExprPtr postfix() {
    auto base = primary();
    // A bracket that opens a new line starts a list literal, not an index.
    while (at(Tok::LBracket) && cur().span.line == toks_[pos_ - 1].span.line) {
      const Span s = take().span;
      Expr e;
      e.span = s;
      e.args.push_back(base);
      if (accept(Tok::Colon)) {
        e.kind = ExprKind::Slice;
        if (!at(Tok::RBracket)) {
          e.has_hi = true;
          e.args.push_back(expr());
        }
      } else {
        auto first = expr();
        if (accept(Tok::Colon)) {
          e.kind = ExprKind::Slice;
          e.has_lo = true;
          e.args.push_back(std::move(first));
          if (!at(Tok::RBracket)) {
            e.has_hi = true;
            e.args.push_back(expr());
          }
        } else {
          e.kind = ExprKind::Index;
          e.args.push_back(std::move(first));
        }
      }
      expect(Tok::RBracket, "']'");
      base = make(std::move(e));
    }
    return base;
  }

  ExprPtr if_expr() {
    DepthGuard guard(*this);
    Expr e;
    e.kind = ExprKind::If;
    e.span = expect(Tok::If, "'if'").span;
    e.args = {expr()};
    e.then_block = block_ptr();
    if (accept(Tok::Else)) {
      if (at(Tok::If)) {
        Block chained;
        chained.span = cur().span;
        chained.tail = if_expr();
        e.else_block = std::make_shared<const Block>(std::move(chained));
      } else {
        e.else_block = block_ptr();
      }
    }
    return make(std::move(e));
  }

  ExprPtr primary() {
    const Token& t = cur();
    Expr e;
    e.span = t.span;
    switch (t.kind) {
      case Tok::Int:
        e.kind = ExprKind::Int;
        e.int_value = take().int_value;
        return make(std::move(e));
      case Tok::Real:
        e.kind = ExprKind::Real;
        e.real_value = take().real_value;
        return make(std::move(e));
      case Tok::Str:
        e.kind = ExprKind::Str;
        e.text = take().text;
        return make(std::move(e));
      case Tok::True:
      case Tok::False:
        e.kind = ExprKind::Bool;
        e.bool_value = take().kind == Tok::True;
        return make(std::move(e));
      case Tok::If:
        return if_expr();
      case Tok::LParen: {
        take();
        auto inner = expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::LBracket: {
        take();
        e.kind = ExprKind::List;
        if (!at(Tok::RBracket)) {
          do {
            if (at(Tok::RBracket)) break;  // trailing comma
            e.args.push_back(expr());
          } while (accept(Tok::Comma));
        }
        expect(Tok::RBracket, "']'");
        return make(std::move(e));
      }
      case Tok::Ident: {
        e.text = take().text;
        if (!at(Tok::LParen)) {
          e.kind = ExprKind::Name;
          return make(std::move(e));
        }
        if (is_forbidden_call(e.text)) {
          throw LangError(ErrorCode::ForbiddenConstruct, "'" + e.text + "' is not available in the sandbox", e.span);
        }
        take();
        e.kind = ExprKind::Call;
        if (!at(Tok::RParen)) {
          do {
            e.args.push_back(expr());
          } while (accept(Tok::Comma));
        }
        expect(Tok::RParen, "')'");
        return make(std::move(e));
      }
      default:
        fail(std::string("expected an expression, found ") + describe(t.kind), t.span);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

Ast parse_source(std::string_view source) { return Parser(tokenize(source)).program(); }

}  // namespace xform::lang
