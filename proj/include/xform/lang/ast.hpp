#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace xform::lang {

/// Byte range plus 1-based line/column of the first byte.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  int line = 1;
  int column = 1;
};

enum class BinaryOp { Add, Sub, Mul, Div, FloorDiv, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };
enum class UnaryOp { Neg, Not };

const char* to_string(BinaryOp op) noexcept;
const char* to_string(UnaryOp op) noexcept;

struct Expr;
struct Stmt;
using ExprPtr = std::shared_ptr<const Expr>;

struct Block {
  std::vector<Stmt> stmts;
  ExprPtr tail;  // value of the block; may be null
  Span span;
};

enum class ExprKind { Int, Real, Str, Bool, Name, Call, Binary, Unary, If, List, Index, Slice };

/// Expression node. Only the fields relevant to `kind` are populated:
///   Int/Real/Str/Bool: the literal member
///   Name: text; Call: text + args
///   Binary: binary_op + args[0..1]; Unary: unary_op + args[0]
///   If: args[0] condition, then_block, else_block (optional)
///   List: args;  Index: args[0][args[1]]
///   Slice: args[0][lo:hi], with has_lo/has_hi telling which of args[1..] exist
struct Expr {
  ExprKind kind = ExprKind::Int;
  Span span;
  std::int64_t int_value = 0;
  double real_value = 0.0;
  bool bool_value = false;
  std::string text;
  BinaryOp binary_op = BinaryOp::Add;
  UnaryOp unary_op = UnaryOp::Neg;
  std::vector<ExprPtr> args;
  std::shared_ptr<const Block> then_block;
  std::shared_ptr<const Block> else_block;
  bool has_lo = false;
  bool has_hi = false;
};

enum class StmtKind { Let, Assign, For, While, Return, Break, Continue, Expr };

struct Stmt {
  StmtKind kind = StmtKind::Expr;
  Span span;
  std::string name;  // Let/Assign target, For variable
  ExprPtr expr;      // value, iterable, condition, returned or evaluated expression
  std::shared_ptr<const Block> body;
};

struct FuncDef {
  std::string name;
  std::vector<std::string> params;
  Block body;
  Span span;
};

struct Ast {
  std::vector<FuncDef> functions;
  Block body;  // body of transform(x)
};

/// Structural equality ignoring spans.
bool equal(const Expr& a, const Expr& b);
bool equal(const Block& a, const Block& b);
bool equal(const Stmt& a, const Stmt& b);
bool equal(const Ast& a, const Ast& b);

}  // namespace xform::lang
